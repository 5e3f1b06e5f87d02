//! Maneuvers, penalized weights and walk validity.

use std::fmt;

use crate::automaton::ContextAutomaton;
use crate::error::{Error, Result};
use crate::network::{EdgeId, Graph, VertexId, Walk};

/// A maneuver penalty: a finite real (possibly negative) or `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Penalty(f64);

impl Penalty {
    pub const INFINITE: Penalty = Penalty(f64::INFINITY);
    pub const ZERO: Penalty = Penalty(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value == f64::NEG_INFINITY {
            return Err(Error::Input(format!("invalid penalty {value}")));
        }
        Ok(Penalty(value + 0.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn class(self) -> ManeuverClass {
        if self.0.is_infinite() {
            ManeuverClass::Prohibited
        } else if self.0 < 0.0 {
            ManeuverClass::Negative
        } else if self.0 > 0.0 {
            ManeuverClass::Positive
        } else {
            ManeuverClass::Restricted
        }
    }
}

impl fmt::Display for Penalty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::io::fmt_value(self.0, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ManeuverClass {
    Negative,
    Positive,
    /// Penalty 0: once entered it must be completed, or the walk ends inside.
    Restricted,
    /// Penalty `+inf`: completing it makes a walk invalid.
    Prohibited,
}

impl fmt::Display for ManeuverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ManeuverClass::Negative => "negative",
            ManeuverClass::Positive => "positive",
            ManeuverClass::Restricted => "restricted",
            ManeuverClass::Prohibited => "prohibited",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ManeuverId(pub u32);

impl ManeuverId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ManeuverId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M{}", self.0 + 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Maneuver {
    pub id: ManeuverId,
    pub walk: Walk,
    pub penalty: Penalty,
}

impl Maneuver {
    pub fn class(&self) -> ManeuverClass {
        self.penalty.class()
    }
}

/// The maneuvers of one graph, with per-vertex and per-edge indexes.
#[derive(Debug, Clone, PartialEq)]
pub struct ManeuverSet {
    maneuvers: Vec<Maneuver>,
    /// maneuvers touching each vertex
    by_vertex: Vec<Vec<ManeuverId>>,
    /// maneuvers by their first edge
    by_first_edge: Vec<Vec<ManeuverId>>,
    /// single-vertex maneuvers per vertex
    zero_edge: Vec<Vec<ManeuverId>>,
    zero_edge_penalty: Vec<f64>,
}

impl ManeuverSet {
    pub fn new(g: &Graph, specs: Vec<(Walk, Penalty)>) -> Result<Self> {
        let n = g.vertex_count();
        let mut set = ManeuverSet {
            maneuvers: Vec::with_capacity(specs.len()),
            by_vertex: vec![Vec::new(); n],
            by_first_edge: vec![Vec::new(); g.edge_count()],
            zero_edge: vec![Vec::new(); n],
            zero_edge_penalty: vec![0.0; n],
        };
        for (walk, penalty) in specs {
            let end = g.check_chain(walk.start(), walk.edges())?;
            if end != walk.end() {
                return Err(Error::Input("maneuver walk does not belong to the graph".into()));
            }
            let id = ManeuverId(set.maneuvers.len() as u32);
            let mut touched = walk.vertices(g);
            touched.sort_unstable();
            touched.dedup();
            for v in touched {
                set.by_vertex[v.index()].push(id);
            }
            match walk.edges().first() {
                Some(&e) => set.by_first_edge[e.index()].push(id),
                None => {
                    set.zero_edge[walk.start().index()].push(id);
                    set.zero_edge_penalty[walk.start().index()] += penalty.value();
                }
            }
            set.maneuvers.push(Maneuver { id, walk, penalty });
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.maneuvers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maneuvers.is_empty()
    }

    pub fn get(&self, id: ManeuverId) -> &Maneuver {
        &self.maneuvers[id.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Maneuver> {
        self.maneuvers.iter()
    }

    pub fn touching(&self, v: VertexId) -> &[ManeuverId] {
        &self.by_vertex[v.index()]
    }

    pub fn starting_with(&self, e: EdgeId) -> &[ManeuverId] {
        &self.by_first_edge[e.index()]
    }

    pub fn zero_edge_at(&self, v: VertexId) -> &[ManeuverId] {
        &self.zero_edge[v.index()]
    }

    /// Sum of the penalties of single-vertex maneuvers at `v`.
    pub fn zero_edge_penalty(&self, v: VertexId) -> f64 {
        self.zero_edge_penalty[v.index()]
    }

    /// Maximum number of maneuvers touching a single vertex.
    pub fn c_m(&self) -> usize {
        self.by_vertex.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `|V| + Σ (edge-count − 1)` over maneuvers with at least one edge:
    /// an upper bound on the number of distinct vertex-context pairs.
    pub fn pair_bound(&self, vertex_count: usize) -> usize {
        vertex_count
            + self
                .maneuvers
                .iter()
                .map(|m| m.walk.len().saturating_sub(1))
                .sum::<usize>()
    }

    pub(crate) fn specs(&self) -> Vec<(Walk, Penalty)> {
        self.maneuvers
            .iter()
            .map(|m| (m.walk.clone(), m.penalty))
            .collect()
    }
}

/// A graph together with its maneuvers and the context automaton built from
/// them. Immutable once built; changing maneuvers means building a new one.
#[derive(Debug, Clone)]
pub struct RoadNetwork {
    graph: Graph,
    maneuvers: ManeuverSet,
    automaton: ContextAutomaton,
}

impl RoadNetwork {
    pub fn new(graph: Graph, maneuvers: Vec<(Walk, Penalty)>) -> Result<Self> {
        let maneuvers = ManeuverSet::new(&graph, maneuvers)?;
        let automaton = ContextAutomaton::build(&graph, &maneuvers)?;
        Ok(RoadNetwork {
            graph,
            maneuvers,
            automaton,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn maneuvers(&self) -> &ManeuverSet {
        &self.maneuvers
    }

    pub fn automaton(&self) -> &ContextAutomaton {
        &self.automaton
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.graph.lookup(name)
    }

    /// Rebuilds the network with one maneuver's penalty replaced.
    pub fn with_penalty(&self, id: ManeuverId, penalty: Penalty) -> Result<RoadNetwork> {
        let mut specs = self.maneuvers.specs();
        specs[id.index()].1 = penalty;
        RoadNetwork::new(self.graph.clone(), specs)
    }

    /// Rebuilds the network with extra maneuvers appended.
    pub fn with_maneuvers(&self, extra: Vec<(Walk, Penalty)>) -> Result<RoadNetwork> {
        let mut specs = self.maneuvers.specs();
        specs.extend(extra);
        RoadNetwork::new(self.graph.clone(), specs)
    }

    /// The reverse network: every edge and every maneuver walk reversed,
    /// weights and penalties unchanged. Ids are preserved, so reversing twice
    /// gives back an identical network.
    pub fn reverse(&self) -> RoadNetwork {
        let graph = self.graph.reversed();
        let specs = self
            .maneuvers
            .iter()
            .map(|m| (m.walk.reversed(), m.penalty))
            .collect();
        RoadNetwork::new(graph, specs).expect("reversal preserves well-formedness")
    }

    /// Weight plus the penalty of every maneuver occurrence in `walk`.
    ///
    /// Streams the walk through the context automaton; occurrences are
    /// counted with multiplicity.
    pub fn penalized_weight(&self, walk: &Walk) -> f64 {
        self.penalized_weight_excluding(walk, None)
    }

    /// Penalized weight computed as if maneuver `excluded` were absent.
    pub fn penalized_weight_excluding(&self, walk: &Walk, excluded: Option<ManeuverId>) -> f64 {
        let g = &self.graph;
        let penalty_of = |ids: &mut dyn Iterator<Item = ManeuverId>| -> f64 {
            ids.filter(|&id| Some(id) != excluded)
                .map(|id| self.maneuvers.get(id).penalty.value())
                .sum()
        };
        let mut total = penalty_of(&mut self.maneuvers.zero_edge_at(walk.start()).iter().copied());
        let mut ctx = crate::automaton::Context::EMPTY;
        for &e in walk.edges() {
            let step = self.automaton.step(ctx, e);
            total += g.edge(e).weight;
            total += penalty_of(&mut self.automaton.completed(&step));
            ctx = step.next;
        }
        total
    }

    /// Whether `walk` has finite penalized weight and obeys every restricted
    /// maneuver it enters.
    ///
    /// Evaluated directly on edge sequences, without the automaton.
    pub fn is_valid(&self, walk: &Walk) -> bool {
        let g = &self.graph;
        let edges = walk.edges();
        for m in self.maneuvers.iter() {
            match m.class() {
                ManeuverClass::Prohibited => {
                    if m.walk.is_subwalk_of(g, walk) {
                        return false;
                    }
                }
                ManeuverClass::Restricted if !m.walk.is_trivial() => {
                    let r = m.walk.edges();
                    for i in 0..edges.len() {
                        if edges[i] != r[0] {
                            continue;
                        }
                        let matched = edges[i..]
                            .iter()
                            .zip(r)
                            .take_while(|(a, b)| a == b)
                            .count();
                        let completed = matched == r.len();
                        let runs_to_end = i + matched == edges.len();
                        if !completed && !runs_to_end {
                            return false;
                        }
                    }
                }
                _ => {}
            }
        }
        true
    }
}

/// Whether a nontrivial prefix of one walk lies inside the other while the
/// whole walk does not (checked in both directions).
pub fn divergent(g: &Graph, q1: &Walk, q2: &Walk) -> bool {
    fn one_way(g: &Graph, a: &Walk, b: &Walk) -> bool {
        // the one-edge prefix is the shortest nontrivial prefix
        match a.edges().first() {
            Some(first) => b.edges().contains(first) && !a.is_subwalk_of(g, b),
            None => false,
        }
    }
    one_way(g, q1, q2) || one_way(g, q2, q1)
}

/// Whether some occurrence of the first edge of `q` inside `host`, at
/// position `from` or later, starts a copy of `q` that disagrees with
/// `host` before either ends.
pub(crate) fn conflicting_occurrence(host: &[EdgeId], q: &[EdgeId], from: usize) -> bool {
    let Some(&first) = q.first() else { return false };
    (from..host.len()).any(|k| {
        let n = (host.len() - k).min(q.len());
        host[k] == first && host[k..k + n] != q[..n]
    })
}

/// Whether some nontrivial prefix of `q2` equals a suffix of `q1`.
pub fn overhangs(q1: &Walk, q2: &Walk) -> bool {
    overhang_lengths(q1.edges(), q2.edges()).next().is_some()
}

/// Lengths `k ≥ 1` such that the first `k` edges of `b` are the last `k`
/// edges of `a`.
pub(crate) fn overhang_lengths<'a>(
    a: &'a [EdgeId],
    b: &'a [EdgeId],
) -> impl Iterator<Item = usize> + 'a {
    (1..=a.len().min(b.len())).filter(move |&k| a[a.len() - k..] == b[..k])
}
