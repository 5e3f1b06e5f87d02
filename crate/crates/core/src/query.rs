//! Maneuver-aware Dijkstra over vertex-context pairs.
//!
//! Each vertex is scanned once per context it can be reached with. Edge
//! relaxation adds the penalties of every maneuver completed by the edge,
//! entered restricted maneuvers force their next edge, and whenever the first
//! edge of a multi-edge negative maneuver is relaxed the whole maneuver is
//! relaxed along at once so that its discount is visible before anything
//! more expensive is scanned.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::automaton::Context;
use crate::error::{Error, Result};
use crate::maneuver::{ManeuverClass, RoadNetwork};
use crate::network::{EdgeId, VertexId, Walk};

/// A search state: a vertex together with the context it was reached with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairKey {
    pub vertex: VertexId,
    pub context: Context,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// distinct pairs scanned
    pub pairs_scanned: usize,
    pub relaxations: usize,
    pub heap_pops: usize,
    pub c_m: usize,
    pub pair_bound: usize,
    /// scans whose distance was below an earlier scan (outside of pairs set
    /// by negative-maneuver processing)
    pub monotonicity_violations: usize,
    /// scanned pairs later improved and scanned again
    pub reopened: usize,
}

impl QueryStats {
    pub(crate) const NAMES: [&'static str; 7] = [
        "pairs_scanned",
        "relaxations",
        "heap_pops",
        "c_m",
        "pair_bound",
        "monotonicity_violations",
        "reopened",
    ];

    pub fn fields(&self) -> [(&'static str, usize); 7] {
        let values = [
            self.pairs_scanned,
            self.relaxations,
            self.heap_pops,
            self.c_m,
            self.pair_bound,
            self.monotonicity_violations,
            self.reopened,
        ];
        let mut out = [("", 0); 7];
        for (i, (name, value)) in Self::NAMES.iter().zip(values).enumerate() {
            out[i] = (name, value);
        }
        out
    }

    pub(crate) fn set(&mut self, name: &str, value: usize) -> bool {
        let slot = match name {
            "pairs_scanned" => &mut self.pairs_scanned,
            "relaxations" => &mut self.relaxations,
            "heap_pops" => &mut self.heap_pops,
            "c_m" => &mut self.c_m,
            "pair_bound" => &mut self.pair_bound,
            "monotonicity_violations" => &mut self.monotonicity_violations,
            "reopened" => &mut self.reopened,
            _ => return false,
        };
        *slot = value;
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult {
    /// Penalized distance; `inf` when no valid walk exists.
    pub distance: f64,
    /// An optimal valid walk, present iff the distance is finite.
    pub walk: Option<Walk>,
    pub stats: QueryStats,
    /// Set when the network was not checked for properness.
    pub best_effort: bool,
}

impl QueryResult {
    pub fn is_reachable(&self) -> bool {
        self.distance.is_finite()
    }
}

/// One main-loop iteration: the pair scanned and the live frontier after it.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub step: usize,
    pub scanned: PairKey,
    pub distance: f64,
    pub frontier: Vec<(PairKey, f64)>,
}

/// Query runner bound to one network.
///
/// Construction checks properness once; queries can then run concurrently
/// from any number of threads.
#[derive(Debug, Clone, Copy)]
pub struct MDijkstra<'a> {
    net: &'a RoadNetwork,
    best_effort: bool,
}

impl<'a> MDijkstra<'a> {
    /// Refuses networks that are not proper.
    pub fn new(net: &'a RoadNetwork) -> Result<Self> {
        let report = net.check_proper();
        if !report.proper {
            return Err(Error::Improper(report));
        }
        Ok(MDijkstra {
            net,
            best_effort: false,
        })
    }

    /// Skips the properness check. Results carry no optimality guarantee and
    /// are flagged as best-effort.
    pub fn unchecked(net: &'a RoadNetwork) -> Self {
        MDijkstra {
            net,
            best_effort: true,
        }
    }

    pub fn network(&self) -> &'a RoadNetwork {
        self.net
    }

    pub fn query(&self, s: VertexId, t: VertexId) -> Result<QueryResult> {
        let mut search = Search::new(self.net, s, t, false)?;
        search.run()?;
        search.finish(self.best_effort)
    }

    pub fn query_by_name(&self, s: &str, t: &str) -> Result<QueryResult> {
        self.query(self.net.vertex(s)?, self.net.vertex(t)?)
    }

    /// Runs a query and records one [`TraceRow`] per scanned pair.
    pub fn trace(&self, s: VertexId, t: VertexId) -> Result<(QueryResult, Vec<TraceRow>)> {
        let mut search = Search::new(self.net, s, t, true)?;
        search.run()?;
        let rows = std::mem::take(&mut search.trace);
        Ok((search.finish(self.best_effort)?, rows))
    }
}

/// Checks properness and answers one query.
pub fn shortest_valid_walk(net: &RoadNetwork, s: VertexId, t: VertexId) -> Result<QueryResult> {
    MDijkstra::new(net)?.query(s, t)
}

#[derive(Debug, Clone, Copy)]
struct Entry {
    distance: f64,
    context_len: u32,
    seq: u64,
    pair: u32,
}

impl Entry {
    /// Pop order: distance, then shorter context, then insertion order.
    /// A context that is a proper suffix of another is strictly shorter, so
    /// this refines the suffix tie-break.
    fn key(&self) -> (f64, u32, u64) {
        (self.distance, self.context_len, self.seq)
    }
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.key(), other.key());
        b.0.total_cmp(&a.0)
            .then(b.1.cmp(&a.1))
            .then(b.2.cmp(&a.2))
    }
}

#[derive(Debug, Clone, Copy)]
struct Pred {
    from: u32,
    edge: EdgeId,
}

struct Search<'a> {
    net: &'a RoadNetwork,
    source: VertexId,
    target: VertexId,
    n: usize,
    dist: Vec<f64>,
    pred: Vec<Option<Pred>>,
    scanned: Vec<bool>,
    ever_scanned: Vec<bool>,
    /// estimate last written by negative-maneuver processing
    via_negative: Vec<bool>,
    heap: BinaryHeap<Entry>,
    seq: u64,
    reached: Option<u32>,
    max_scanned: f64,
    stats: QueryStats,
    tracing: bool,
    trace: Vec<TraceRow>,
}

impl<'a> Search<'a> {
    fn new(net: &'a RoadNetwork, s: VertexId, t: VertexId, tracing: bool) -> Result<Self> {
        let g = net.graph();
        for v in [s, t] {
            if !g.contains_vertex(v) {
                return Err(Error::UnknownVertex(format!("#{}", v.0)));
            }
        }
        let n = g.vertex_count();
        let pairs = n + net.automaton().context_count() - 1;
        let stats = QueryStats {
            c_m: net.maneuvers().c_m(),
            pair_bound: net.maneuvers().pair_bound(n),
            ..QueryStats::default()
        };
        Ok(Search {
            net,
            source: s,
            target: t,
            n,
            dist: vec![f64::INFINITY; pairs],
            pred: vec![None; pairs],
            scanned: vec![false; pairs],
            ever_scanned: vec![false; pairs],
            via_negative: vec![false; pairs],
            heap: BinaryHeap::new(),
            seq: 0,
            reached: None,
            max_scanned: f64::NEG_INFINITY,
            stats,
            tracing,
            trace: Vec::new(),
        })
    }

    #[inline]
    fn index(&self, v: VertexId, x: Context) -> u32 {
        if x.is_empty() {
            v.0
        } else {
            (self.n + x.index() - 1) as u32
        }
    }

    fn key_of(&self, pair: u32) -> PairKey {
        let i = pair as usize;
        if i < self.n {
            PairKey {
                vertex: VertexId(pair),
                context: Context::EMPTY,
            }
        } else {
            let context = Context((i - self.n + 1) as u32);
            PairKey {
                vertex: self.net.automaton().context_end(context).expect("nonempty"),
                context,
            }
        }
    }

    fn push(&mut self, pair: u32) {
        let key = self.key_of(pair);
        self.heap.push(Entry {
            distance: self.dist[pair as usize],
            context_len: self.net.automaton().context_len(key.context) as u32,
            seq: self.seq,
            pair,
        });
        self.seq += 1;
    }

    fn is_live(&self, e: &Entry) -> bool {
        let i = e.pair as usize;
        !self.scanned[i] && e.distance <= self.dist[i]
    }

    fn run(&mut self) -> Result<()> {
        let start = self.index(self.source, Context::EMPTY);
        let initial = self.net.maneuvers().zero_edge_penalty(self.source);
        if initial < f64::INFINITY {
            self.dist[start as usize] = initial;
            self.push(start);
        }
        // only reachable by reopening pairs, which proper networks never do
        let pop_cap = self
            .dist
            .len()
            .saturating_mul(self.dist.len() + 1)
            .saturating_add(16);

        let aut = self.net.automaton();
        let ms = self.net.maneuvers();
        let g = self.net.graph();
        while self.reached.is_none() {
            let Some(entry) = self.heap.pop() else { break };
            self.stats.heap_pops += 1;
            if self.stats.heap_pops > pop_cap {
                return Err(Error::Internal(
                    "search does not settle; the network likely has a negative cycle".into(),
                ));
            }
            if !self.is_live(&entry) {
                continue;
            }
            let pair = entry.pair;
            let PairKey {
                vertex: u,
                context: x,
            } = self.key_of(pair);
            let du = self.dist[pair as usize];

            if du < self.max_scanned && !self.via_negative[pair as usize] {
                self.stats.monotonicity_violations += 1;
            }
            self.max_scanned = self.max_scanned.max(du);

            let forced = aut.forced(x);
            let edges = if forced.is_empty() { g.out(u) } else { forced };
            for &f in edges {
                self.relax(pair, x, f, false);
                for &m in ms.starting_with(f) {
                    let m = ms.get(m);
                    if m.class() == ManeuverClass::Negative && m.walk.len() > 1 {
                        self.process_negative(x, m.walk.edges());
                    }
                }
            }

            self.scanned[pair as usize] = true;
            if !self.ever_scanned[pair as usize] {
                self.ever_scanned[pair as usize] = true;
                self.stats.pairs_scanned += 1;
            }
            if u == self.target {
                self.reached = Some(pair);
            }
            if self.tracing {
                let row = TraceRow {
                    step: self.trace.len() + 1,
                    scanned: PairKey {
                        vertex: u,
                        context: x,
                    },
                    distance: du,
                    frontier: self.frontier(),
                };
                self.trace.push(row);
            }
        }
        Ok(())
    }

    /// Relaxes `f` out of `pair` (whose context is `x`). Returns the pair
    /// reached and its context.
    fn relax(&mut self, pair: u32, x: Context, f: EdgeId, negative: bool) -> (u32, Context) {
        self.stats.relaxations += 1;
        let step = self.net.automaton().step(x, f);
        let edge = self.net.graph().edge(f);
        let target = self.index(edge.head, step.next);
        let du = self.dist[pair as usize];
        let candidate = du + (edge.weight + step.penalty);
        let t = target as usize;
        if candidate < self.dist[t] {
            if self.scanned[t] {
                self.scanned[t] = false;
                self.stats.reopened += 1;
            }
            self.dist[t] = candidate;
            self.pred[t] = Some(Pred { from: pair, edge: f });
            self.via_negative[t] = negative;
            self.push(target);
        }
        (target, step.next)
    }

    /// Relaxes the remaining edges of a negative maneuver whose first edge
    /// was just relaxed out of a pair with context `x`. Stops early when an estimate along the
    /// way is infinite or a restricted maneuver forces another direction.
    fn process_negative(&mut self, x: Context, edges: &[EdgeId]) {
        let aut = self.net.automaton();
        let first = aut.step(x, edges[0]);
        let head = self.net.graph().edge(edges[0]).head;
        let mut at = self.index(head, first.next);
        let mut ctx = first.next;
        for &e in &edges[1..] {
            if !self.dist[at as usize].is_finite() {
                break;
            }
            let forced = aut.forced(ctx);
            if !forced.is_empty() && !forced.contains(&e) {
                break;
            }
            (at, ctx) = self.relax(at, ctx, e, true);
        }
    }

    fn frontier(&self) -> Vec<(PairKey, f64)> {
        let mut live: Vec<Entry> = self.heap.iter().filter(|e| self.is_live(e)).copied().collect();
        // greatest under the reversed order pops first
        live.sort_by(|a, b| b.cmp(a));
        live.dedup_by_key(|e| e.pair);
        live.into_iter()
            .map(|e| (self.key_of(e.pair), e.distance))
            .collect()
    }

    fn construct_walk(&self, end: u32) -> Result<Walk> {
        let g = self.net.graph();
        let mut edges = Vec::new();
        let mut at = end;
        while let Some(p) = self.pred[at as usize] {
            edges.push(p.edge);
            at = p.from;
            if edges.len() > self.dist.len() {
                return Err(Error::Internal("predecessor chain has a cycle".into()));
            }
        }
        let start = self.key_of(at);
        if start.vertex != self.source || !start.context.is_empty() {
            return Err(Error::Internal("predecessor chain does not reach the source".into()));
        }
        edges.reverse();
        Walk::new(g, self.source, edges)
            .map_err(|e| Error::Internal(format!("broken predecessor chain: {e}")))
    }

    fn finish(self, best_effort: bool) -> Result<QueryResult> {
        let (distance, walk) = match self.reached {
            Some(pair) => (self.dist[pair as usize], Some(self.construct_walk(pair)?)),
            None => (f64::INFINITY, None),
        };
        Ok(QueryResult {
            distance,
            walk,
            stats: self.stats,
            best_effort,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(net: &RoadNetwork, w: &Walk) -> String {
        w.display(net.graph()).to_string()
    }

    #[test]
    fn net_b_golden_query() {
        let net = fixtures::net_b();
        let r = MDijkstra::new(&net).unwrap().query_by_name("a", "m").unwrap();
        assert_eq!(r.distance, 9.0);
        assert_eq!(
            names(&net, r.walk.as_ref().unwrap()),
            "(a,b,c,d,e,f,g,h,i,j,k,l,m)"
        );
        assert!(!r.best_effort);
        assert_eq!(r.stats.pairs_scanned, 15);
        assert_eq!(r.stats.monotonicity_violations, 0);
        assert_eq!(r.stats.reopened, 0);
    }

    #[test]
    fn net_a_query_takes_the_u_turn() {
        let net = fixtures::net_a();
        let r = MDijkstra::new(&net).unwrap().query_by_name("a", "c").unwrap();
        // b-d-b avoids the banned turn with two extra edges
        assert_eq!(r.distance, 4.0);
        assert_eq!(names(&net, r.walk.as_ref().unwrap()), "(a,b,d,b,c)");
        let r = MDijkstra::new(&net).unwrap().query_by_name("a", "f").unwrap();
        assert_eq!(r.distance, 3.0);
    }

    #[test]
    fn net_b_to_s_pays_the_single_vertex_penalty() {
        let net = fixtures::net_b();
        let r = MDijkstra::new(&net).unwrap().query_by_name("a", "s").unwrap();
        assert_eq!(r.distance, 12.0);
        assert_eq!(names(&net, r.walk.as_ref().unwrap()), "(a,b,c,d,e,f,s)");
    }

    #[test]
    fn source_equals_target() {
        let net = fixtures::net_b();
        let engine = MDijkstra::new(&net).unwrap();
        let (r, rows) = engine
            .trace(net.vertex("a").unwrap(), net.vertex("a").unwrap())
            .unwrap();
        assert_eq!(r.distance, 0.0);
        assert!(r.walk.unwrap().is_trivial());
        assert_eq!(rows.len(), 1);
        // zero-edge maneuver at the source is charged at initialization
        let r = engine.query_by_name("s", "s").unwrap();
        assert_eq!(r.distance, 9.0);
    }

    #[test]
    fn unreachable_target() {
        let net = fixtures::net_b();
        let engine = MDijkstra::new(&net).unwrap();
        let (r, rows) = engine
            .trace(net.vertex("t").unwrap(), net.vertex("a").unwrap())
            .unwrap();
        assert_eq!(r.distance, f64::INFINITY);
        assert!(r.walk.is_none());
        assert_eq!(rows.len(), 1);
    }

    #[test]
    fn prohibited_single_vertex_at_source() {
        let net = fixtures::net_b();
        let s = net.vertex("a").unwrap();
        let net = net
            .with_maneuvers(vec![(Walk::trivial(s), crate::Penalty::INFINITE)])
            .unwrap();
        let r = MDijkstra::new(&net).unwrap().query(s, s).unwrap();
        assert_eq!(r.distance, f64::INFINITY);
        assert_eq!(r.stats.heap_pops, 0);
    }

    #[test]
    fn improper_networks_are_refused_unless_waived() {
        let net = fixtures::net_b_rule_iii();
        assert!(matches!(MDijkstra::new(&net), Err(Error::Improper(_))));
        let r = MDijkstra::unchecked(&net).query_by_name("a", "m").unwrap();
        assert!(r.best_effort);
        assert!(r.distance.is_finite());
    }

    #[test]
    fn negative_maneuver_processing_sets_estimates_along_it() {
        let net = fixtures::net_b();
        let engine = MDijkstra::new(&net).unwrap();
        let (_, rows) = engine
            .trace(net.vertex("a").unwrap(), net.vertex("m").unwrap())
            .unwrap();
        // after scanning b, the frontier already holds the whole of M1
        let after_b = &rows[1].frontier;
        let show: Vec<String> = after_b
            .iter()
            .map(|(k, d)| format!("{}={d}", net.graph().vertex_name(k.vertex)))
            .collect();
        assert_eq!(show, ["f=2", "t=2", "c=2", "r=2", "d=3", "e=4"]);
    }

    #[test]
    fn pop_order_prefers_shorter_contexts_on_ties() {
        let a = Entry {
            distance: 2.0,
            context_len: 1,
            seq: 0,
            pair: 0,
        };
        let b = Entry {
            distance: 2.0,
            context_len: 0,
            seq: 5,
            pair: 1,
        };
        let c = Entry {
            distance: 3.0,
            context_len: 2,
            seq: 1,
            pair: 2,
        };
        let mut heap = BinaryHeap::from(vec![a, c, b]);
        assert_eq!(heap.pop().unwrap().pair, 1);
        assert_eq!(heap.pop().unwrap().pair, 0);
        assert_eq!(heap.pop().unwrap().pair, 2);
        let mut single = BinaryHeap::from(vec![c]);
        assert_eq!(single.pop().unwrap().pair, 2);
    }

    #[test]
    fn restricted_maneuver_is_followed() {
        // a->b->c restricted; b also leads to d cheaply, but once a->b is
        // taken the walk must continue to c or stop at b
        let mut g = crate::Graph::new();
        g.add_named_edge("a", "b", 1.0, None).unwrap();
        g.add_named_edge("b", "c", 10.0, None).unwrap();
        g.add_named_edge("b", "d", 1.0, None).unwrap();
        g.add_named_edge("a", "x", 5.0, None).unwrap();
        g.add_named_edge("x", "d", 5.0, None).unwrap();
        let r = Walk::from_names(&g, &["a", "b", "c"]).unwrap();
        let net = RoadNetwork::new(g, vec![(r, crate::Penalty::ZERO)]).unwrap();
        let engine = MDijkstra::new(&net).unwrap();
        assert_eq!(engine.query_by_name("a", "d").unwrap().distance, 10.0);
        assert_eq!(engine.query_by_name("a", "b").unwrap().distance, 1.0);
        assert_eq!(engine.query_by_name("b", "d").unwrap().distance, 1.0);
    }
}
