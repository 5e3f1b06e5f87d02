//! Strong connectivity of a network with maneuvers: for every edge `e` into
//! `u` and every edge `f` out of `v`, every way of arriving over `e` (each
//! context ending with `e`, or `e` alone) must extend to a valid walk that
//! finishes with every way of leaving over `f` (each reversed context of the
//! reverse network starting with `f`, or `f` alone).

use std::collections::VecDeque;

use crate::maneuver::RoadNetwork;
use crate::network::{EdgeId, Walk};

use super::state_graph::StateGraph;

/// Edge sequences ending with `e`: `(e)` and every context whose last edge
/// is `e`.
fn arrivals(net: &RoadNetwork, e: EdgeId) -> Vec<Vec<EdgeId>> {
    let aut = net.automaton();
    let head = net.graph().edge(e).head;
    let mut out = vec![vec![e]];
    for &x in aut.nonempty_contexts_at(head) {
        let edges = aut.context_edges(x);
        if edges.last() == Some(&e) && edges.len() > 1 {
            out.push(edges);
        }
    }
    out
}

/// Edge sequences starting with `f`: `(f)` and the reversal of every
/// reverse-network context whose last edge is `f` reversed.
fn departures(rev: &RoadNetwork, f: EdgeId) -> Vec<Vec<EdgeId>> {
    // reversal keeps edge ids
    let mut out = vec![vec![f]];
    for w in arrivals(rev, f).into_iter().skip(1) {
        out.push(w.into_iter().rev().collect());
    }
    out
}

/// State reached by following `edges` from the empty context at their
/// start, or `None` if the walk is not valid.
fn follow(net: &RoadNetwork, sg: &StateGraph, edges: &[EdgeId]) -> Option<usize> {
    let walk = Walk::from_edges(net.graph(), edges.to_vec()).ok()?;
    sg.path_weight(&walk)?;
    let mut at = sg.source(walk.start());
    for &e in edges {
        at = sg.arc(at, e)?.to;
    }
    Some(at)
}

/// Follows `edges` from state `from`; true if every step has an arc.
fn extends(sg: &StateGraph, from: usize, edges: &[EdgeId]) -> bool {
    let mut at = from;
    for &e in edges {
        match sg.arc(at, e) {
            Some(arc) => at = arc.to,
            None => return false,
        }
    }
    true
}

fn reachable(sg: &StateGraph, from: usize) -> Vec<bool> {
    let mut seen = vec![false; sg.state_count()];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for arc in sg.arcs(u) {
            if !seen[arc.to] {
                seen[arc.to] = true;
                queue.push_back(arc.to);
            }
        }
    }
    seen
}

/// Whether every arrival can be joined to every departure by a valid walk
/// of the form arrival · middle · departure.
pub fn is_strongly_connected(net: &RoadNetwork) -> bool {
    let g = net.graph();
    let sg = StateGraph::build(net);
    let rev = net.reverse();
    let all_departures: Vec<Vec<Vec<EdgeId>>> =
        g.edges().iter().map(|f| departures(&rev, f.id)).collect();
    for e in g.edges() {
        for x in arrivals(net, e.id) {
            let Some(after) = follow(net, &sg, &x) else {
                return false;
            };
            let seen = reachable(&sg, after);
            for f in g.edges() {
                let tail = f.tail;
                for y in &all_departures[f.id.index()] {
                    let joined = sg
                        .states_at(tail)
                        .iter()
                        .any(|&st| seen[st] && extends(&sg, st, y));
                    if !joined {
                        return false;
                    }
                }
            }
        }
    }
    true
}
