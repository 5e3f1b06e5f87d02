//! Shortest valid walks in road networks with maneuvers.
//!
//! A maneuver is a walk carrying a penalty: positive for delays, negative for
//! discounts, `inf` for a banned sequence of turns, and zero for a restricted
//! maneuver that must be followed to its end once entered. The search runs
//! Dijkstra over (vertex, context) pairs, where the context is the part of a
//! maneuver currently being traversed, tracked with a multi-pattern
//! automaton over edge ids.
//!
//! ```
//! use maneuver_route::{fixtures, MDijkstra};
//!
//! let net = fixtures::net_b();
//! let result = MDijkstra::new(&net)?.query_by_name("a", "m")?;
//! assert_eq!(result.distance, 9.0);
//! # Ok::<(), maneuver_route::Error>(())
//! ```

pub mod automaton;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod maneuver;
pub mod network;
pub mod oracle;
pub mod proper;
pub mod query;

pub use automaton::{Context, ContextAutomaton};
pub use error::{Diagnostic, Error, ParseError, Result};
pub use maneuver::{
    divergent, overhangs, Maneuver, ManeuverClass, ManeuverId, ManeuverSet, Penalty, RoadNetwork,
};
pub use network::{Edge, EdgeId, Graph, VertexId, Walk};
pub use proper::{PropernessReport, Rule, Violation};
pub use query::{shortest_valid_walk, MDijkstra, PairKey, QueryResult, QueryStats, TraceRow};
