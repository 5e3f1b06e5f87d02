use std::collections::HashMap;

use crate::automaton::Context;
use crate::maneuver::RoadNetwork;
use crate::network::{EdgeId, VertexId, Walk};
use crate::query::PairKey;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub to: usize,
    pub edge: EdgeId,
    /// edge weight plus the penalties completed by the edge; may be negative
    pub weight: f64,
}

/// The network expanded over vertex-context pairs. Prohibited completions
/// have no arc, and a state inside a restricted maneuver only has the arc
/// continuing it.
#[derive(Debug, Clone)]
pub struct StateGraph {
    states: Vec<PairKey>,
    index: HashMap<PairKey, usize>,
    arcs: Vec<Vec<Arc>>,
    /// penalty of single-vertex maneuvers per vertex, charged at the source
    offsets: Vec<f64>,
    by_vertex: Vec<Vec<usize>>,
}

impl StateGraph {
    pub fn build(net: &RoadNetwork) -> Self {
        let g = net.graph();
        let aut = net.automaton();
        let mut states = Vec::new();
        let mut index = HashMap::new();
        let mut by_vertex = vec![Vec::new(); g.vertex_count()];
        for v in g.vertices() {
            for context in aut.contexts_at(v) {
                let key = PairKey { vertex: v, context };
                index.insert(key, states.len());
                by_vertex[v.index()].push(states.len());
                states.push(key);
            }
        }
        let arcs = states
            .iter()
            .map(|&PairKey { vertex, context }| {
                let forced = aut
                    .restricted_direction(vertex, context)
                    .expect("state context belongs to its vertex");
                let permitted: &[EdgeId] = match forced.len() {
                    0 => g.out_edges(vertex).expect("known vertex"),
                    1 => forced,
                    // two restricted maneuvers disagree: the walk can only stop
                    _ => &[],
                };
                permitted
                    .iter()
                    .filter_map(|&f| {
                        let (next, done) = aut.advance(context, f).expect("edge leaves the state");
                        let penalty: f64 = done
                            .iter()
                            .map(|&id| net.maneuvers().get(id).penalty.value())
                            .sum();
                        let weight = g.edge(f).weight + penalty;
                        let to = index[&PairKey {
                            vertex: g.edge(f).head,
                            context: next,
                        }];
                        (weight < f64::INFINITY).then_some(Arc { to, edge: f, weight })
                    })
                    .collect()
            })
            .collect();
        let offsets = g
            .vertices()
            .map(|v| net.maneuvers().zero_edge_penalty(v))
            .collect();
        StateGraph {
            states,
            index,
            arcs,
            offsets,
            by_vertex,
        }
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(Vec::len).sum()
    }

    pub fn states(&self) -> &[PairKey] {
        &self.states
    }

    pub fn state(&self, i: usize) -> PairKey {
        self.states[i]
    }

    pub fn index_of(&self, key: PairKey) -> Option<usize> {
        self.index.get(&key).copied()
    }

    pub fn arcs(&self, i: usize) -> &[Arc] {
        &self.arcs[i]
    }

    pub fn arc(&self, from: usize, edge: EdgeId) -> Option<&Arc> {
        self.arcs[from].iter().find(|a| a.edge == edge)
    }

    /// States at vertex `v`, the empty context first.
    pub fn states_at(&self, v: VertexId) -> &[usize] {
        &self.by_vertex[v.index()]
    }

    pub fn source(&self, s: VertexId) -> usize {
        self.index[&PairKey {
            vertex: s,
            context: Context::EMPTY,
        }]
    }

    /// Charge for starting at `s`.
    pub fn source_offset(&self, s: VertexId) -> f64 {
        self.offsets[s.index()]
    }

    /// Weight of the state-graph path following `walk` from its start, with
    /// the source offset. `None` when some step has no arc, i.e. the walk is
    /// cut off by a prohibited or restricted maneuver.
    pub fn path_weight(&self, walk: &Walk) -> Option<f64> {
        let offset = self.source_offset(walk.start());
        if offset == f64::INFINITY {
            return None;
        }
        let mut at = self.source(walk.start());
        let mut total = offset;
        for &e in walk.edges() {
            let arc = self.arc(at, e)?;
            total += arc.weight;
            at = arc.to;
        }
        Some(total)
    }
}

pub fn build_state_graph(net: &RoadNetwork) -> StateGraph {
    StateGraph::build(net)
}
