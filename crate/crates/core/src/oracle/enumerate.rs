//! Exhaustive search over walks, evaluated straight from the maneuver
//! definitions without the context automaton.

use crate::maneuver::{ManeuverClass, RoadNetwork};
use crate::network::{EdgeId, VertexId, Walk};

use super::OracleError;

/// Size limits above which the oracle comparison skips enumeration, and the
/// search-node budget of a single enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap {
    pub vertices: usize,
    pub edges: usize,
    pub maneuvers: usize,
    pub maneuver_edges: usize,
    /// search nodes visited per source
    pub nodes: usize,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap {
            vertices: 12,
            edges: 25,
            maneuvers: 6,
            maneuver_edges: 4,
            nodes: 5_000_000,
        }
    }
}

impl EnumerationCap {
    pub fn check(&self, net: &RoadNetwork) -> Result<(), OracleError> {
        let g = net.graph();
        let longest = net.maneuvers().iter().map(|m| m.walk.len()).max().unwrap_or(0);
        if g.vertex_count() > self.vertices
            || g.edge_count() > self.edges
            || net.maneuvers().len() > self.maneuvers
            || longest > self.maneuver_edges
        {
            return Err(OracleError::TooLarge(format!(
                "{} vertices, {} edges, {} maneuvers of up to {} edges; enumeration is limited to {}/{}/{}/{}",
                g.vertex_count(),
                g.edge_count(),
                net.maneuvers().len(),
                longest,
                self.vertices,
                self.edges,
                self.maneuvers,
                self.maneuver_edges
            )));
        }
        Ok(())
    }
}

/// Best walk found per target vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub distance: f64,
    pub walk: Option<Walk>,
}

/// A simple upper bound on the number of edges an optimal walk needs: the
/// number of (vertex, context) situations.
pub fn default_max_edges(net: &RoadNetwork) -> usize {
    net.graph().vertex_count()
        + net
            .maneuvers()
            .iter()
            .map(|m| m.walk.len().saturating_sub(1))
            .sum::<usize>()
}

struct Dfs<'a> {
    net: &'a RoadNetwork,
    /// (edges, penalty) of maneuvers with at least one edge
    patterns: Vec<(&'a [EdgeId], f64)>,
    restricted: Vec<&'a [EdgeId]>,
    max_edges: usize,
    budget: usize,
    visited: usize,
    edges: Vec<EdgeId>,
    /// (vertex, situation) seen on the current path
    path: Vec<(VertexId, Vec<EdgeId>)>,
    best: Vec<Optimum>,
}

impl<'a> Dfs<'a> {
    /// The longest suffix of the current walk that is a proper prefix of
    /// some maneuver. Together with the end vertex this fixes how
    /// any continuation is charged.
    fn situation(&self) -> Vec<EdgeId> {
        let n = self.edges.len();
        let mut best = 0;
        for (p, _) in &self.patterns {
            for k in (best + 1)..p.len().min(n + 1) {
                if self.edges[n - k..] == p[..k] {
                    best = k;
                }
            }
        }
        self.edges[n - best..].to_vec()
    }

    /// Penalty charged by the last edge, or `None` if it completes a
    /// prohibited maneuver or leaves an entered restricted one.
    fn last_step_penalty(&self) -> Option<f64> {
        let n = self.edges.len();
        let e = self.edges[n - 1];
        for r in &self.restricted {
            for i in n.saturating_sub(r.len())..n - 1 {
                let k = n - 1 - i;
                if self.edges[i..n - 1] == r[..k] && r[k] != e {
                    return None;
                }
            }
        }
        let head = self.net.graph().edge(e).head;
        let mut total = self.net.maneuvers().zero_edge_penalty(head);
        for (p, penalty) in &self.patterns {
            if p.len() <= n && self.edges[n - p.len()..] == **p {
                total += penalty;
            }
        }
        (total < f64::INFINITY).then_some(total)
    }

    fn visit(&mut self, at: VertexId, cost: f64) -> Result<(), OracleError> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(OracleError::TooLarge(format!(
                "more than {} search nodes",
                self.budget
            )));
        }
        if cost < self.best[at.index()].distance {
            let walk = Walk::new(self.net.graph(), self.path_start(), self.edges.clone())
                .expect("search follows edges");
            self.best[at.index()] = Optimum {
                distance: cost,
                walk: Some(walk),
            };
        }
        if self.edges.len() == self.max_edges {
            return Ok(());
        }
        let g = self.net.graph();
        for &f in g.out_edges(at).expect("known vertex") {
            self.edges.push(f);
            if let Some(penalty) = self.last_step_penalty() {
                let head = g.edge(f).head;
                let situation = (head, self.situation());
                if !self.path.contains(&situation) {
                    self.path.push(situation);
                    self.visit(head, cost + g.edge(f).weight + penalty)?;
                    self.path.pop();
                }
            }
            self.edges.pop();
        }
        Ok(())
    }

    fn path_start(&self) -> VertexId {
        self.path[0].0
    }
}

/// Optimal penalized weight from `s` to every vertex over valid walks of at
/// most `max_edges` edges, with a witness walk.
///
/// Walks that revisit the same situation are skipped: the loop between the
/// two visits can be cut out without changing validity, and it never
/// lowers the cost unless the network has a negative cycle.
pub fn enumerate_all(
    net: &RoadNetwork,
    s: VertexId,
    max_edges: usize,
    cap: &EnumerationCap,
) -> Result<Vec<Optimum>, OracleError> {
    let ms = net.maneuvers();
    let mut dfs = Dfs {
        net,
        patterns: ms
            .iter()
            .filter(|m| !m.walk.is_trivial())
            .map(|m| (m.walk.edges(), m.penalty.value()))
            .collect(),
        restricted: ms
            .iter()
            .filter(|m| m.class() == ManeuverClass::Restricted && !m.walk.is_trivial())
            .map(|m| m.walk.edges())
            .collect(),
        max_edges,
        budget: cap.nodes,
        visited: 0,
        edges: Vec::new(),
        path: vec![(s, Vec::new())],
        best: vec![
            Optimum {
                distance: f64::INFINITY,
                walk: None,
            };
            net.graph().vertex_count()
        ],
    };
    let offset = ms.zero_edge_penalty(s);
    if offset < f64::INFINITY {
        dfs.visit(s, offset)?;
    }
    for (v, opt) in dfs.best.iter().enumerate() {
        if let Some(w) = &opt.walk {
            let pw = net.penalized_weight(w);
            if !net.is_valid(w) || (pw - opt.distance).abs() > 1e-9 * (1.0 + pw.abs()) {
                return Err(OracleError::Mismatch(format!(
                    "enumeration witness {} to vertex #{v} disagrees with the definitions (weight {} vs {})",
                    w.display(net.graph()),
                    crate::io::format_value(opt.distance),
                    crate::io::format_value(pw)
                )));
            }
        }
    }
    Ok(dfs.best)
}

pub fn enumerate_optimum(
    net: &RoadNetwork,
    s: VertexId,
    t: VertexId,
    max_edges: usize,
) -> Result<Optimum, OracleError> {
    let mut all = enumerate_all(net, s, max_edges, &EnumerationCap::default())?;
    Ok(all.swap_remove(t.index()))
}
