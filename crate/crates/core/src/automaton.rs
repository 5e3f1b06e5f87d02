//! Context automaton: a multi-pattern prefix trie over edge ids with failure
//! links, one pattern per maneuver walk.
//!
//! A *context* is the longest suffix of the walk traversed so far that is a
//! proper prefix of some maneuver, or the empty context when there is none.
//! Trie nodes that are proper prefixes of a maneuver (the root and every node
//! with a child) are the contexts. Leaf nodes are complete maneuvers only;
//! landing on one collects its outputs and then falls back along failure
//! links to the nearest context.
//!
//! Every transition a search can take is tabulated at build time, so
//! [`ContextAutomaton::step`] is a table lookup.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::maneuver::{ManeuverClass, ManeuverId, ManeuverSet};
use crate::network::{EdgeId, Graph, VertexId, Walk};

/// Handle of a context state. `Context::EMPTY` is the empty context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Context(pub(crate) u32);

impl Context {
    pub const EMPTY: Context = Context(0);

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Result of feeding one edge to the automaton.
#[derive(Debug, Clone, Copy)]
pub struct Step {
    /// Context after the edge.
    pub next: Context,
    /// Sum of the penalties of all maneuvers completed by the edge,
    /// including single-vertex maneuvers at its head.
    pub penalty: f64,
    node: u32,
    head: VertexId,
}

#[derive(Debug, Clone)]
struct Node {
    parent: u32,
    edge: Option<EdgeId>,
    depth: u32,
    children: BTreeMap<EdgeId, u32>,
    fail: u32,
    own: Vec<ManeuverId>,
    /// maneuvers whose walk is a suffix of this node's string
    outputs: Vec<ManeuverId>,
    /// next edges of restricted maneuvers having this node as a nontrivial
    /// proper prefix
    restricted_next: Vec<EdgeId>,
}

impl Node {
    fn new(parent: u32, edge: Option<EdgeId>, depth: u32) -> Self {
        Node {
            parent,
            edge,
            depth,
            children: BTreeMap::new(),
            fail: 0,
            own: Vec::new(),
            outputs: Vec::new(),
            restricted_next: Vec::new(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ContextAutomaton {
    nodes: Vec<Node>,
    /// context id -> trie node
    ctx_node: Vec<u32>,
    /// context id -> end vertex (unused for the empty context)
    ctx_end: Vec<VertexId>,
    /// nonempty contexts ending at each vertex
    by_vertex: Vec<Vec<Context>>,
    root_steps: Vec<Step>,
    /// per context, indexed by the edge's slot in its tail's out-list
    steps: Vec<Vec<Step>>,
    edge_slot: Vec<u32>,
    edge_tail: Vec<VertexId>,
    restricted: Vec<Vec<EdgeId>>,
    zero_edge: Vec<Vec<ManeuverId>>,
}

impl ContextAutomaton {
    pub fn build(g: &Graph, ms: &ManeuverSet) -> Result<Self> {
        let mut nodes = vec![Node::new(0, None, 0)];
        for m in ms.iter() {
            let end = g.check_chain(m.walk.start(), m.walk.edges())?;
            if end != m.walk.end() {
                return Err(Error::Input(format!("maneuver {} is not a walk of the graph", m.id)));
            }
            if m.walk.is_trivial() {
                continue;
            }
            let restricted = m.class() == ManeuverClass::Restricted;
            let edges = m.walk.edges();
            let mut at = 0u32;
            for (i, &e) in edges.iter().enumerate() {
                if restricted && i > 0 {
                    nodes[at as usize].restricted_next.push(e);
                }
                at = match nodes[at as usize].children.get(&e) {
                    Some(&c) => c,
                    None => {
                        let c = nodes.len() as u32;
                        let depth = nodes[at as usize].depth + 1;
                        nodes.push(Node::new(at, Some(e), depth));
                        nodes[at as usize].children.insert(e, c);
                        c
                    }
                };
            }
            nodes[at as usize].own.push(m.id);
        }

        // failure links and output sets, breadth first
        let mut order = Vec::with_capacity(nodes.len());
        let mut queue = VecDeque::from([0u32]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let children: Vec<(EdgeId, u32)> =
                nodes[u as usize].children.iter().map(|(&e, &c)| (e, c)).collect();
            for (e, c) in children {
                let fail = if u == 0 {
                    0
                } else {
                    let mut f = nodes[u as usize].fail;
                    loop {
                        if let Some(&x) = nodes[f as usize].children.get(&e) {
                            break x;
                        }
                        if f == 0 {
                            break 0;
                        }
                        f = nodes[f as usize].fail;
                    }
                };
                nodes[c as usize].fail = fail;
                let mut outputs = nodes[c as usize].own.clone();
                outputs.extend_from_slice(&nodes[fail as usize].outputs);
                nodes[c as usize].outputs = outputs;
                queue.push_back(c);
            }
        }

        // contexts in breadth-first order, root first
        let mut node_ctx = vec![None; nodes.len()];
        let mut ctx_node = Vec::new();
        let mut ctx_end = Vec::new();
        let mut by_vertex = vec![Vec::new(); g.vertex_count()];
        for &u in &order {
            let node = &nodes[u as usize];
            if u == 0 || !node.children.is_empty() {
                let id = ctx_node.len() as u32;
                node_ctx[u as usize] = Some(id);
                ctx_node.push(u);
                match node.edge {
                    Some(e) => {
                        let end = g.edge(e).head;
                        ctx_end.push(end);
                        by_vertex[end.index()].push(Context(id));
                    }
                    None => ctx_end.push(VertexId(u32::MAX)),
                }
            }
        }
        let mut normalized = vec![0u32; nodes.len()];
        for &u in &order {
            normalized[u as usize] = match node_ctx[u as usize] {
                Some(id) => id,
                None => normalized[nodes[u as usize].fail as usize],
            };
        }

        let restricted = ctx_node
            .iter()
            .map(|&n| {
                let mut out = Vec::new();
                let mut at = n;
                while at != 0 {
                    out.extend_from_slice(&nodes[at as usize].restricted_next);
                    at = nodes[at as usize].fail;
                }
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();

        let zero_edge: Vec<Vec<ManeuverId>> =
            g.vertices().map(|v| ms.zero_edge_at(v).to_vec()).collect();

        let goto = |mut at: u32, e: EdgeId| -> u32 {
            loop {
                if let Some(&c) = nodes[at as usize].children.get(&e) {
                    return c;
                }
                if at == 0 {
                    return 0;
                }
                at = nodes[at as usize].fail;
            }
        };
        let make_step = |target: u32, e: EdgeId| -> Step {
            let head = g.edge(e).head;
            let penalty = nodes[target as usize]
                .outputs
                .iter()
                .map(|&id| ms.get(id).penalty.value())
                .sum::<f64>()
                + ms.zero_edge_penalty(head);
            Step {
                next: Context(normalized[target as usize]),
                penalty,
                node: target,
                head,
            }
        };

        let root_steps = g
            .edges()
            .iter()
            .map(|edge| make_step(goto(0, edge.id), edge.id))
            .collect();
        let steps = ctx_node
            .iter()
            .zip(&ctx_end)
            .map(|(&n, &end)| {
                if n == 0 {
                    return Vec::new();
                }
                g.out(end)
                    .iter()
                    .map(|&e| make_step(goto(n, e), e))
                    .collect()
            })
            .collect();

        let mut edge_slot = vec![0u32; g.edge_count()];
        for v in g.vertices() {
            for (i, &e) in g.out(v).iter().enumerate() {
                edge_slot[e.index()] = i as u32;
            }
        }
        let edge_tail = g.edges().iter().map(|e| e.tail).collect();

        Ok(ContextAutomaton {
            nodes,
            ctx_node,
            ctx_end,
            by_vertex,
            root_steps,
            steps,
            edge_slot,
            edge_tail,
            restricted,
            zero_edge,
        })
    }

    /// Number of contexts, the empty one included.
    pub fn context_count(&self) -> usize {
        self.ctx_node.len()
    }

    /// All contexts: the empty one first, then by increasing length.
    pub fn contexts(&self) -> impl Iterator<Item = Context> {
        (0..self.ctx_node.len() as u32).map(Context)
    }

    /// The contexts possible at `v`: the empty one and every proper maneuver
    /// prefix ending at `v`.
    pub fn contexts_at(&self, v: VertexId) -> Vec<Context> {
        let mut out = Vec::with_capacity(1 + self.by_vertex[v.index()].len());
        out.push(Context::EMPTY);
        out.extend_from_slice(&self.by_vertex[v.index()]);
        out
    }

    pub(crate) fn nonempty_contexts_at(&self, v: VertexId) -> &[Context] {
        &self.by_vertex[v.index()]
    }

    pub fn is_context_of(&self, v: VertexId, x: Context) -> bool {
        x.is_empty() || (x.index() < self.ctx_end.len() && self.ctx_end[x.index()] == v)
    }

    /// End vertex of a nonempty context.
    pub fn context_end(&self, x: Context) -> Option<VertexId> {
        (!x.is_empty()).then(|| self.ctx_end[x.index()])
    }

    /// Number of edges in the context walk.
    pub fn context_len(&self, x: Context) -> usize {
        self.nodes[self.ctx_node[x.index()] as usize].depth as usize
    }

    pub fn context_edges(&self, x: Context) -> Vec<EdgeId> {
        let mut edges = Vec::new();
        let mut at = self.ctx_node[x.index()];
        while let Some(e) = self.nodes[at as usize].edge {
            edges.push(e);
            at = self.nodes[at as usize].parent;
        }
        edges.reverse();
        edges
    }

    /// The walk a nonempty context stands for.
    pub fn context_walk(&self, g: &Graph, x: Context) -> Option<Walk> {
        if x.is_empty() {
            return None;
        }
        Some(Walk::from_edges(g, self.context_edges(x)).expect("context walks are chains"))
    }

    /// Feeds edge `f` to context `x`. `x` must be empty or end at `f`'s tail.
    #[inline]
    pub fn step(&self, x: Context, f: EdgeId) -> Step {
        if x.is_empty() {
            self.root_steps[f.index()]
        } else {
            debug_assert_eq!(self.ctx_end[x.index()], self.edge_tail[f.index()]);
            self.steps[x.index()][self.edge_slot[f.index()] as usize]
        }
    }

    /// Checked form of [`ContextAutomaton::step`]: the next context and the
    /// maneuvers completed by appending `f` to the context walk.
    pub fn advance(&self, x: Context, f: EdgeId) -> Result<(Context, Vec<ManeuverId>)> {
        if f.index() >= self.edge_tail.len() || x.index() >= self.ctx_node.len() {
            return Err(Error::Input("unknown edge or context".into()));
        }
        if !x.is_empty() && self.ctx_end[x.index()] != self.edge_tail[f.index()] {
            return Err(Error::Input(
                "edge does not leave the end vertex of the context".into(),
            ));
        }
        let step = self.step(x, f);
        Ok((step.next, self.completed(&step).collect()))
    }

    /// Maneuvers completed by a step, longest first, then single-vertex ones.
    pub fn completed<'a>(&'a self, step: &Step) -> impl Iterator<Item = ManeuverId> + 'a {
        self.nodes[step.node as usize]
            .outputs
            .iter()
            .chain(&self.zero_edge[step.head.index()])
            .copied()
    }

    /// Edges that continue a restricted maneuver already entered in context
    /// `x` at `v`. Empty when nothing is enforced.
    pub fn restricted_direction(&self, v: VertexId, x: Context) -> Result<&[EdgeId]> {
        if !self.is_context_of(v, x) {
            return Err(Error::Input("context does not belong to the vertex".into()));
        }
        Ok(&self.restricted[x.index()])
    }

    #[inline]
    pub(crate) fn forced(&self, x: Context) -> &[EdgeId] {
        &self.restricted[x.index()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::maneuver::RoadNetwork;

    fn names(net: &RoadNetwork, ctxs: &[Context]) -> Vec<String> {
        let mut out: Vec<String> = ctxs
            .iter()
            .map(|&x| match net.automaton().context_walk(net.graph(), x) {
                Some(w) => w.display(net.graph()).to_string(),
                None => "∅".to_string(),
            })
            .collect();
        out.sort();
        out
    }

    fn edge(net: &RoadNetwork, t: &str, h: &str) -> EdgeId {
        let g = net.graph();
        g.edges_between(g.lookup(t).unwrap(), g.lookup(h).unwrap())[0]
    }

    fn ctx(net: &RoadNetwork, walk: &[&str]) -> Context {
        let mut x = Context::EMPTY;
        for pair in walk.windows(2) {
            x = net.automaton().step(x, edge(net, pair[0], pair[1])).next;
        }
        x
    }

    #[test]
    fn net_b_states() {
        let net = fixtures::net_b();
        let aut = net.automaton();
        let all: Vec<Context> = aut.contexts().collect();
        assert_eq!(
            names(&net, &all),
            ["(b,c)", "(b,c,d)", "(b,c,d,e)", "(b,r)", "(g,h)", "(i,j)", "(i,j,k)", "∅"]
        );
        let e = net.vertex("e").unwrap();
        assert_eq!(names(&net, &aut.contexts_at(e)), ["(b,c,d,e)", "∅"]);
        let a = net.vertex("a").unwrap();
        assert_eq!(names(&net, &aut.contexts_at(a)), ["∅"]);
    }

    #[test]
    fn net_a_states_share_prefix() {
        let net = fixtures::net_a();
        let aut = net.automaton();
        assert_eq!(aut.context_count(), 2);
        let b = net.vertex("b").unwrap();
        assert_eq!(names(&net, &aut.contexts_at(b)), ["(a,b)", "∅"]);
    }

    #[test]
    fn empty_maneuver_set_has_only_root() {
        let mut g = Graph::new();
        g.add_named_edge("a", "b", 1.0, None).unwrap();
        let net = RoadNetwork::new(g, vec![]).unwrap();
        assert_eq!(net.automaton().context_count(), 1);
    }

    #[test]
    fn advance_examples() {
        let net = fixtures::net_b();
        let aut = net.automaton();
        let id = |n: u32| ManeuverId(n - 1);

        let x = ctx(&net, &["b", "c", "d", "e"]);
        assert_eq!(aut.context_len(x), 3);
        let (next, done) = aut.advance(x, edge(&net, "e", "f")).unwrap();
        assert!(next.is_empty());
        assert_eq!(done, vec![id(1)]);

        let x = ctx(&net, &["g", "h"]);
        let (next, done) = aut.advance(x, edge(&net, "h", "s")).unwrap();
        assert!(next.is_empty());
        assert_eq!(done, vec![id(3), id(4)]);
        assert_eq!(aut.step(x, edge(&net, "h", "s")).penalty, 14.0);

        let (next, done) = aut.advance(Context::EMPTY, edge(&net, "a", "b")).unwrap();
        assert!(next.is_empty() && done.is_empty());

        let (next, done) = aut.advance(Context::EMPTY, edge(&net, "b", "c")).unwrap();
        assert_eq!(next, ctx(&net, &["b", "c"]));
        assert!(done.is_empty());

        // context (b,c) ends at c, edge a->b does not leave c
        assert!(aut.advance(next, edge(&net, "a", "b")).is_err());
    }

    #[test]
    fn restricted_direction_examples() {
        let net = fixtures::net_b();
        let aut = net.automaton();
        let j = net.vertex("j").unwrap();
        let x = ctx(&net, &["i", "j"]);
        assert_eq!(aut.restricted_direction(j, x).unwrap(), &[edge(&net, "j", "k")]);
        let i = net.vertex("i").unwrap();
        assert!(aut.restricted_direction(i, Context::EMPTY).unwrap().is_empty());
        let k = net.vertex("k").unwrap();
        let x = ctx(&net, &["i", "j", "k"]);
        assert_eq!(aut.restricted_direction(k, x).unwrap(), &[edge(&net, "k", "l")]);
        assert!(aut.restricted_direction(i, x).is_err());
    }

    #[test]
    fn leaf_falls_back_to_nearest_context() {
        // M1 = (a,b,c,d) and M2 = (b,c): after (a,b,c) the context is (a,b,c);
        // M3 = (c,d,e) makes (c,d) a context reachable by falling back from
        // the leaf (a,b,c,d).
        let mut g = Graph::new();
        for (t, h) in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")] {
            g.add_named_edge(t, h, 1.0, None).unwrap();
        }
        let w = |ns: &[&str]| Walk::from_names(&g, ns).unwrap();
        let specs = vec![
            (w(&["a", "b", "c", "d"]), crate::Penalty::new(1.0).unwrap()),
            (w(&["b", "c"]), crate::Penalty::new(2.0).unwrap()),
            (w(&["c", "d", "e"]), crate::Penalty::new(4.0).unwrap()),
        ];
        let net = RoadNetwork::new(g, specs).unwrap();
        let x = ctx(&net, &["a", "b", "c", "d"]);
        let walk = net.automaton().context_walk(net.graph(), x).unwrap();
        assert_eq!(walk.display(net.graph()).to_string(), "(c,d)");
        let full = Walk::from_names(net.graph(), &["a", "b", "c", "d", "e"]).unwrap();
        assert_eq!(net.penalized_weight(&full), 4.0 + 1.0 + 2.0 + 4.0);
    }
}
