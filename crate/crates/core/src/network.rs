//! Directed multigraphs, walks and the containment predicates on walks.
//!
//! Walks are stored as a start vertex plus a sequence of edge ids. Parallel
//! edges make a vertex sequence ambiguous, so edge ids are the identity of a
//! walk everywhere in this crate.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: f64,
    pub label: Option<String>,
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// A directed multigraph with non-negative finite edge weights.
///
/// Self-loops and parallel edges are allowed. Out-edges of a vertex are kept
/// in insertion order, which makes every search over the graph deterministic.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Graph {
    names: Vec<String>,
    name_index: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
    label_index: HashMap<String, EdgeId>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the vertex called `name`, creating it if needed.
    pub fn ensure_vertex(&mut self, name: &str) -> Result<VertexId> {
        if let Some(&v) = self.name_index.get(name) {
            return Ok(v);
        }
        if !is_valid_name(name) {
            return Err(Error::Input(format!("invalid vertex name `{name}`")));
        }
        let v = VertexId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.name_index.insert(name.to_string(), v);
        self.out.push(Vec::new());
        Ok(v)
    }

    pub fn add_edge(
        &mut self,
        tail: VertexId,
        head: VertexId,
        weight: f64,
        label: Option<&str>,
    ) -> Result<EdgeId> {
        self.check_vertex(tail)?;
        self.check_vertex(head)?;
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::Input(format!(
                "edge weight must be finite and non-negative, got {weight}"
            )));
        }
        let id = EdgeId(self.edges.len() as u32);
        if let Some(label) = label {
            if !is_valid_name(label) {
                return Err(Error::Input(format!("invalid edge label `{label}`")));
            }
            if self.label_index.contains_key(label) {
                return Err(Error::Input(format!("duplicate edge label `{label}`")));
            }
            self.label_index.insert(label.to_string(), id);
        }
        self.edges.push(Edge {
            id,
            tail,
            head,
            // normalizes -0.0
            weight: weight + 0.0,
            label: label.map(str::to_string),
        });
        self.out[tail.index()].push(id);
        Ok(id)
    }

    /// Convenience for building graphs by vertex name.
    pub fn add_named_edge(
        &mut self,
        tail: &str,
        head: &str,
        weight: f64,
        label: Option<&str>,
    ) -> Result<EdgeId> {
        let t = self.ensure_vertex(tail)?;
        let h = self.ensure_vertex(head)?;
        self.add_edge(t, h, weight, label)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.names.len()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e.index() < self.edges.len()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{}", v.0)))
        }
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.name_index.get(name).copied()
    }

    /// Like [`Graph::vertex`] but reports unknown names as an input error.
    pub fn lookup(&self, name: &str) -> Result<VertexId> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_by_label(&self, label: &str) -> Option<EdgeId> {
        self.label_index.get(label).copied()
    }

    /// All edges leaving `v`, in insertion order.
    pub fn out_edges(&self, v: VertexId) -> Result<&[EdgeId]> {
        self.check_vertex(v)?;
        Ok(&self.out[v.index()])
    }

    /// Unchecked variant used on hot paths where `v` is known to exist.
    #[inline]
    pub(crate) fn out(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.index()]
    }

    /// Edges from `tail` to `head`, in insertion order.
    pub fn edges_between(&self, tail: VertexId, head: VertexId) -> Vec<EdgeId> {
        self.out[tail.index()]
            .iter()
            .copied()
            .filter(|&e| self.edges[e.index()].head == head)
            .collect()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    /// The reverse graph: same vertices, every edge flipped with the same id,
    /// weight and label.
    pub fn reversed(&self) -> Graph {
        let mut out = vec![Vec::new(); self.names.len()];
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| {
                out[e.head.index()].push(e.id);
                Edge {
                    id: e.id,
                    tail: e.head,
                    head: e.tail,
                    weight: e.weight,
                    label: e.label.clone(),
                }
            })
            .collect();
        Graph {
            names: self.names.clone(),
            name_index: self.name_index.clone(),
            edges,
            out,
            label_index: self.label_index.clone(),
        }
    }

    /// Checks that `edges` forms an incidence chain starting at `start`.
    pub fn check_chain(&self, start: VertexId, edges: &[EdgeId]) -> Result<VertexId> {
        self.check_vertex(start)?;
        let mut at = start;
        for (i, &e) in edges.iter().enumerate() {
            if !self.contains_edge(e) {
                return Err(Error::Input(format!("unknown edge #{}", e.0)));
            }
            let edge = self.edge(e);
            if edge.tail != at {
                return Err(Error::Input(format!(
                    "edge {} of the walk leaves `{}` but the walk is at `{}`",
                    i + 1,
                    self.vertex_name(edge.tail),
                    self.vertex_name(at)
                )));
            }
            at = edge.head;
        }
        Ok(at)
    }
}

/// A walk: a start vertex followed by a (possibly empty) chain of edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    start: VertexId,
    end: VertexId,
    edges: Vec<EdgeId>,
}

#[allow(clippy::len_without_is_empty)]
impl Walk {
    pub fn trivial(v: VertexId) -> Self {
        Walk {
            start: v,
            end: v,
            edges: Vec::new(),
        }
    }

    pub fn new(g: &Graph, start: VertexId, edges: Vec<EdgeId>) -> Result<Self> {
        let end = g.check_chain(start, &edges)?;
        Ok(Walk { start, end, edges })
    }

    /// Builds a walk from a nonempty edge chain; the start is the tail of the
    /// first edge.
    pub fn from_edges(g: &Graph, edges: Vec<EdgeId>) -> Result<Self> {
        let first = edges
            .first()
            .ok_or_else(|| Error::Input("empty edge list has no start vertex".into()))?;
        if !g.contains_edge(*first) {
            return Err(Error::Input(format!("unknown edge #{}", first.0)));
        }
        Walk::new(g, g.edge(*first).tail, edges)
    }

    /// Builds a walk from vertex names. Fails if a consecutive pair is not
    /// joined by exactly one edge.
    pub fn from_names(g: &Graph, names: &[&str]) -> Result<Self> {
        let first = names
            .first()
            .ok_or_else(|| Error::Input("a walk needs at least one vertex".into()))?;
        let start = g.lookup(first)?;
        let mut edges = Vec::with_capacity(names.len().saturating_sub(1));
        let mut at = start;
        for name in &names[1..] {
            let next = g.lookup(name)?;
            let between = g.edges_between(at, next);
            match between.as_slice() {
                [e] => edges.push(*e),
                [] => {
                    return Err(Error::Input(format!(
                        "no edge from `{}` to `{name}`",
                        g.vertex_name(at)
                    )))
                }
                _ => {
                    return Err(Error::Input(format!(
                        "ambiguous step `{}` -> `{name}`: {} parallel edges",
                        g.vertex_name(at),
                        between.len()
                    )))
                }
            }
            at = next;
        }
        Ok(Walk {
            start,
            end: at,
            edges,
        })
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn vertices(&self, g: &Graph) -> Vec<VertexId> {
        let mut vs = Vec::with_capacity(self.edges.len() + 1);
        vs.push(self.start);
        vs.extend(self.edges.iter().map(|&e| g.edge(e).head));
        vs
    }

    pub fn weight(&self, g: &Graph) -> f64 {
        self.edges.iter().map(|&e| g.edge(e).weight).sum()
    }

    pub fn concat(&self, other: &Walk) -> Result<Walk> {
        if self.end != other.start {
            return Err(Error::Input(format!(
                "cannot concatenate: first walk ends at #{} but second starts at #{}",
                self.end.0, other.start.0
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(Walk {
            start: self.start,
            end: other.end,
            edges,
        })
    }

    /// Appends one edge; the edge must leave the current end vertex.
    pub fn push(&mut self, g: &Graph, e: EdgeId) -> Result<()> {
        let edge = g.edge(e);
        if edge.tail != self.end {
            return Err(Error::Input("edge does not continue the walk".into()));
        }
        self.edges.push(e);
        self.end = edge.head;
        Ok(())
    }

    /// The `i`-prefix: the first `i` edges.
    pub fn prefix(&self, g: &Graph, i: usize) -> Walk {
        let edges = self.edges[..i].to_vec();
        let end = if i == 0 {
            self.start
        } else {
            g.edge(edges[i - 1]).head
        };
        Walk {
            start: self.start,
            end,
            edges,
        }
    }

    /// The `i`-suffix: everything after the first `i` edges.
    pub fn suffix(&self, g: &Graph, i: usize) -> Walk {
        let start = if i == 0 {
            self.start
        } else {
            g.edge(self.edges[i - 1]).head
        };
        Walk {
            start,
            end: self.end,
            edges: self.edges[i..].to_vec(),
        }
    }

    /// All prefixes, from the trivial walk up to the walk itself.
    pub fn prefixes(&self, g: &Graph) -> Vec<Walk> {
        (0..=self.len()).map(|i| self.prefix(g, i)).collect()
    }

    pub fn proper_prefixes(&self, g: &Graph) -> Vec<Walk> {
        (0..self.len()).map(|i| self.prefix(g, i)).collect()
    }

    /// All suffixes, from the walk itself down to the trivial walk at its end.
    pub fn suffixes(&self, g: &Graph) -> Vec<Walk> {
        (0..=self.len()).map(|i| self.suffix(g, i)).collect()
    }

    pub fn proper_suffixes(&self, g: &Graph) -> Vec<Walk> {
        (1..=self.len()).map(|i| self.suffix(g, i)).collect()
    }

    /// Start positions (in edges) where `self` occurs as a contiguous subwalk
    /// of `other`. A trivial walk occurs at every position where its vertex
    /// is visited.
    pub fn occurrences_in(&self, g: &Graph, other: &Walk) -> Vec<usize> {
        if self.is_trivial() {
            return other
                .vertices(g)
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == self.start)
                .map(|(i, _)| i)
                .collect();
        }
        let k = self.edges.len();
        if k > other.edges.len() {
            return Vec::new();
        }
        (0..=other.edges.len() - k)
            .filter(|&i| other.edges[i..i + k] == self.edges[..])
            .collect()
    }

    pub fn is_subwalk_of(&self, g: &Graph, other: &Walk) -> bool {
        if self.is_trivial() {
            return other.start == self.start
                || other.edges.iter().any(|&e| g.edge(e).head == self.start);
        }
        let k = self.edges.len();
        k <= other.edges.len() && other.edges.windows(k).any(|w| w == &self.edges[..])
    }

    /// The same walk traversed backwards in the reverse graph (edge ids are
    /// shared between a graph and its reverse).
    pub fn reversed(&self) -> Walk {
        let mut edges = self.edges.clone();
        edges.reverse();
        Walk {
            start: self.end,
            end: self.start,
            edges,
        }
    }

    /// `(a,b,c)` style rendering with vertex names.
    pub fn display<'a>(&'a self, g: &'a Graph) -> WalkDisplay<'a> {
        WalkDisplay { walk: self, graph: g }
    }
}

pub struct WalkDisplay<'a> {
    walk: &'a Walk,
    graph: &'a Graph,
}

impl fmt::Display for WalkDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.walk.vertices(self.graph).into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.graph.vertex_name(v))?;
        }
        f.write_str(")")
    }
}
