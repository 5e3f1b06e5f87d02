use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::network::{EdgeId, Graph, VertexId, Walk};

#[derive(Debug, Clone, PartialEq)]
pub struct DijkstraResult {
    pub distance: f64,
    pub walk: Option<Walk>,
    /// heap pops, stale entries included
    pub pops: usize,
    /// vertices scanned
    pub settled: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64, u64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Plain Dijkstra on edge weights, ignoring maneuvers. Stops when `t` is
/// scanned.
pub fn classical_dijkstra(g: &Graph, s: VertexId, t: VertexId) -> DijkstraResult {
    let n = g.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<EdgeId>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    let (mut pops, mut settled) = (0, 0);
    dist[s.index()] = 0.0;
    heap.push(Reverse((Key(0.0, seq), s)));
    while let Some(Reverse((Key(d, _), u))) = heap.pop() {
        pops += 1;
        if done[u.index()] || d > dist[u.index()] {
            continue;
        }
        done[u.index()] = true;
        settled += 1;
        if u == t {
            break;
        }
        for &e in g.out_edges(u).expect("known vertex") {
            let edge = g.edge(e);
            let candidate = d + edge.weight;
            if candidate < dist[edge.head.index()] {
                dist[edge.head.index()] = candidate;
                pred[edge.head.index()] = Some(e);
                seq += 1;
                heap.push(Reverse((Key(candidate, seq), edge.head)));
            }
        }
    }
    let walk = done[t.index()].then(|| {
        let mut edges = Vec::new();
        let mut at = t;
        while at != s {
            let e = pred[at.index()].expect("settled vertices have predecessors");
            edges.push(e);
            at = g.edge(e).tail;
        }
        edges.reverse();
        Walk::new(g, s, edges).expect("predecessor chain")
    });
    DijkstraResult {
        distance: if done[t.index()] { dist[t.index()] } else { f64::INFINITY },
        walk,
        pops,
        settled,
    }
}
