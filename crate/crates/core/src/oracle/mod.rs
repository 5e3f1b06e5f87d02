//! Reference implementations for checking the search: the expanded state
//! graph with Bellman-Ford, brute-force walk enumeration, maneuver-blind
//! Dijkstra, strong connectivity and a random network generator.

mod bellman_ford;
mod connectivity;
mod dijkstra;
mod enumerate;
mod generator;
mod state_graph;

use thiserror::Error;

pub use bellman_ford::{bellman_ford_all, bellman_ford_distance, bellman_ford_states};
pub use connectivity::is_strongly_connected;
pub use dijkstra::{classical_dijkstra, DijkstraResult};
pub use enumerate::{default_max_edges, enumerate_all, enumerate_optimum, EnumerationCap, Optimum};
pub use generator::{corpus, random_proper_network, GenParams, Generated};
pub use state_graph::{build_state_graph, Arc, StateGraph};

use crate::maneuver::RoadNetwork;
use crate::network::VertexId;
use crate::query::MDijkstra;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("negative cycle in the state graph: {0}")]
    NegativeCycle(String),
    #[error("instance too large for enumeration: {0}")]
    TooLarge(String),
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("oracle disagreement: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Engine(#[from] crate::Error),
}

/// Distances for one source-target pair from each method.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub source: VertexId,
    pub target: VertexId,
    pub engine: f64,
    pub bellman_ford: f64,
    /// absent when enumeration was skipped
    pub enumeration: Option<f64>,
}

impl Verdict {
    pub fn agrees(&self) -> bool {
        let close = |a: f64, b: f64| a == b || (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()));
        close(self.engine, self.bellman_ford)
            && self.enumeration.is_none_or(|e| close(e, self.engine))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub verdicts: Vec<Verdict>,
    /// why enumeration did not run, if it did not
    pub enumeration_skipped: Option<String>,
}

impl CrossCheck {
    pub fn all_agree(&self) -> bool {
        self.verdicts.iter().all(Verdict::agrees)
    }
}

/// Compares the engine with Bellman-Ford on the state graph and, when the
/// instance is small enough, with exhaustive enumeration. `pairs` of `None`
/// means every ordered pair of vertices.
pub fn cross_check(
    net: &RoadNetwork,
    pairs: Option<&[(VertexId, VertexId)]>,
    max_edges: Option<usize>,
) -> Result<CrossCheck, OracleError> {
    let engine = MDijkstra::new(net)?;
    let sg = build_state_graph(net);
    let all: Vec<(VertexId, VertexId)>;
    let pairs = match pairs {
        Some(p) => p,
        None => {
            let vs: Vec<VertexId> = net.graph().vertices().collect();
            all = vs.iter().flat_map(|&s| vs.iter().map(move |&t| (s, t))).collect();
            &all
        }
    };
    let cap = EnumerationCap::default();
    let mut skipped = cap.check(net).err().map(|e| e.to_string());
    let max_edges = max_edges.unwrap_or_else(|| default_max_edges(net));

    let mut verdicts = Vec::with_capacity(pairs.len());
    let mut cached: Option<(VertexId, Vec<f64>, Option<Vec<Optimum>>)> = None;
    for &(s, t) in pairs {
        if cached.as_ref().map(|c| c.0) != Some(s) {
            let bf = bellman_ford_all(net, &sg, s)?;
            let en = if skipped.is_none() {
                match enumerate_all(net, s, max_edges, &cap) {
                    Ok(v) => Some(v),
                    Err(OracleError::TooLarge(why)) => {
                        skipped = Some(why);
                        None
                    }
                    Err(e) => return Err(e),
                }
            } else {
                None
            };
            cached = Some((s, bf, en));
        }
        let (_, bf, en) = cached.as_ref().expect("filled above");
        verdicts.push(Verdict {
            source: s,
            target: t,
            engine: engine.query(s, t)?.distance,
            bellman_ford: bf[t.index()],
            enumeration: en.as_ref().map(|e| e[t.index()].distance),
        });
    }
    Ok(CrossCheck {
        verdicts,
        enumeration_skipped: skipped,
    })
}
