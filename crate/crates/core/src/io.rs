//! Line-oriented text formats for networks, maneuvers, query results and
//! search traces.
//!
//! ```text
//! # network
//! edge a b 1
//! edge b c 2.5 bc
//! # maneuvers
//! maneuver inf a b c
//! maneuver* -1 a ab bc
//! maneuver 9 s
//! # result
//! distance 3.5
//! walk a ab b bc c
//! stat pairs_scanned 3
//! ```

use std::fmt::{self, Write as _};

use crate::automaton::Context;
use crate::error::{Diagnostic, Error, ParseError, Result};
use crate::maneuver::{ManeuverSet, Penalty, RoadNetwork};
use crate::network::{EdgeId, Graph, VertexId, Walk};
use crate::query::{PairKey, QueryResult, QueryStats, TraceRow};

/// Writes a distance, weight or penalty: `inf` for infinity, otherwise the
/// shortest decimal that reads back to the same value.
pub fn fmt_value(v: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if v == f64::INFINITY {
        f.write_str("inf")
    } else if v == f64::NEG_INFINITY {
        f.write_str("-inf")
    } else {
        write!(f, "{}", v + 0.0)
    }
}

pub fn format_value(v: f64) -> String {
    struct V(f64);
    impl fmt::Display for V {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt_value(self.0, f)
        }
    }
    V(v).to_string()
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    column: usize,
    text: &'a str,
}

/// Yields `(line number, tokens)` for every non-blank, non-comment line.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    tokens.push(Token {
                        column: line[..s].chars().count() + 1,
                        text: &line[s..pos],
                    });
                    start = None;
                }
                (false, None) => start = Some(pos),
                _ => {}
            }
        }
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

struct Diagnostics(Vec<Diagnostic>);

impl Diagnostics {
    fn push(&mut self, line: usize, column: usize, message: impl Into<String>) {
        self.0.push(Diagnostic {
            line,
            column,
            message: message.into(),
        });
    }

    fn finish<T>(self, value: T) -> Result<T, ParseError> {
        if self.0.is_empty() {
            Ok(value)
        } else {
            Err(ParseError { diagnostics: self.0 })
        }
    }
}

fn parse_weight(tok: Token<'_>) -> std::result::Result<f64, String> {
    match tok.text.parse::<f64>() {
        Ok(w) if w.is_nan() || w.is_infinite() => Err(format!("weight `{}` is not finite", tok.text)),
        Ok(w) if w < 0.0 => Err(format!("negative weight {}", tok.text)),
        Ok(w) => Ok(w),
        Err(_) => Err(format!("expected a weight, found `{}`", tok.text)),
    }
}

fn parse_penalty(tok: Token<'_>) -> std::result::Result<Penalty, String> {
    if tok.text == "inf" {
        return Ok(Penalty::INFINITE);
    }
    match tok.text.parse::<f64>() {
        Ok(p) if p.is_finite() => Ok(Penalty::new(p).expect("finite")),
        _ => Err(format!(
            "expected a penalty (decimal or `inf`), found `{}`",
            tok.text
        )),
    }
}

pub fn parse_network(text: &str) -> Result<Graph, ParseError> {
    let mut g = Graph::new();
    let mut diags = Diagnostics(Vec::new());
    for (line, toks) in lines(text) {
        if toks[0].text != "edge" {
            diags.push(line, toks[0].column, format!("unknown directive `{}`", toks[0].text));
            continue;
        }
        if !(4..=5).contains(&toks.len()) {
            diags.push(
                line,
                toks[0].column,
                "expected `edge <tail> <head> <weight> [<label>]`",
            );
            continue;
        }
        let weight = match parse_weight(toks[3]) {
            Ok(w) => w,
            Err(msg) => {
                diags.push(line, toks[3].column, msg);
                continue;
            }
        };
        let bad_names: Vec<_> = toks[1..3]
            .iter()
            .filter(|t| !crate::network::is_valid_name(t.text))
            .collect();
        for tok in &bad_names {
            diags.push(line, tok.column, format!("invalid vertex name `{}`", tok.text));
        }
        if !bad_names.is_empty() {
            continue;
        }
        if let Some(label) = toks.get(4) {
            if !crate::network::is_valid_name(label.text) {
                diags.push(line, label.column, format!("invalid edge label `{}`", label.text));
                continue;
            }
            if g.edge_by_label(label.text).is_some() {
                diags.push(line, label.column, format!("duplicate edge label `{}`", label.text));
                continue;
            }
        }
        if let Err(e) = g.add_named_edge(toks[1].text, toks[2].text, weight, toks.get(4).map(|t| t.text)) {
            diags.push(line, toks[1].column, e.to_string());
        }
    }
    diags.finish(g)
}

/// Parses maneuver lines against `g`. Returns walks and penalties in file
/// order.
pub fn parse_maneuvers(text: &str, g: &Graph) -> Result<Vec<(Walk, Penalty)>, ParseError> {
    let mut out = Vec::new();
    let mut diags = Diagnostics(Vec::new());
    for (line, toks) in lines(text) {
        let labelled = match toks[0].text {
            "maneuver" => false,
            "maneuver*" => true,
            other => {
                diags.push(line, toks[0].column, format!("unknown directive `{other}`"));
                continue;
            }
        };
        if toks.len() < 3 {
            diags.push(line, toks[0].column, "expected a penalty and at least one vertex");
            continue;
        }
        let penalty = match parse_penalty(toks[1]) {
            Ok(p) => p,
            Err(msg) => {
                diags.push(line, toks[1].column, msg);
                continue;
            }
        };
        let Some(start) = g.vertex(toks[2].text) else {
            diags.push(line, toks[2].column, format!("unknown vertex `{}`", toks[2].text));
            continue;
        };
        let mut edges = Vec::new();
        let mut at = start;
        let before = diags.0.len();
        for tok in &toks[3..] {
            let found = if labelled {
                match g.edge_by_label(tok.text) {
                    Some(e) if g.edge(e).tail == at => Ok(e),
                    Some(_) => Err(format!(
                        "edge `{}` does not leave `{}`",
                        tok.text,
                        g.vertex_name(at)
                    )),
                    None => Err(format!("unknown edge label `{}`", tok.text)),
                }
            } else {
                match g.vertex(tok.text) {
                    None => Err(format!("unknown vertex `{}`", tok.text)),
                    Some(next) => match g.edges_between(at, next).as_slice() {
                        [e] => Ok(*e),
                        [] => Err(format!(
                            "no edge from `{}` to `{}`",
                            g.vertex_name(at),
                            tok.text
                        )),
                        _ => Err(format!(
                            "ambiguous step `{}` -> `{}`: parallel edges, use `maneuver*` with edge labels",
                            g.vertex_name(at),
                            tok.text
                        )),
                    },
                }
            };
            match found {
                Ok(e) => {
                    edges.push(e);
                    at = g.edge(e).head;
                }
                Err(msg) => {
                    diags.push(line, tok.column, msg);
                    // later steps are meaningless once the chain breaks,
                    // except for ambiguity which still fixes the position
                    match g.vertex(tok.text) {
                        Some(v) if !labelled => at = v,
                        _ => break,
                    }
                }
            }
        }
        if diags.0.len() == before {
            out.push((Walk::new(g, start, edges).expect("checked chain"), penalty));
        }
    }
    diags.finish(out)
}

/// Parses a network file and a maneuver file into a road network.
pub fn parse_road_network(network: &str, maneuvers: &str) -> Result<RoadNetwork> {
    let g = parse_network(network)?;
    let specs = parse_maneuvers(maneuvers, &g)?;
    RoadNetwork::new(g, specs)
}

pub fn serialize_network(g: &Graph) -> String {
    let mut out = String::new();
    for e in g.edges() {
        let _ = write!(
            out,
            "edge {} {} {}",
            g.vertex_name(e.tail),
            g.vertex_name(e.head),
            format_value(e.weight)
        );
        if let Some(label) = &e.label {
            let _ = write!(out, " {label}");
        }
        out.push('\n');
    }
    out
}

/// Writes maneuvers in vertex form, switching to the label form for walks
/// that step along parallel edges. Fails if such a walk uses unlabelled
/// edges.
pub fn serialize_maneuvers(g: &Graph, ms: &ManeuverSet) -> Result<String> {
    let mut out = String::new();
    for m in ms.iter() {
        let ambiguous = m
            .walk
            .edges()
            .iter()
            .any(|&e| g.edges_between(g.edge(e).tail, g.edge(e).head).len() > 1);
        if ambiguous {
            let _ = write!(out, "maneuver* {} {}", m.penalty, g.vertex_name(m.walk.start()));
            for &e in m.walk.edges() {
                match &g.edge(e).label {
                    Some(label) => {
                        let _ = write!(out, " {label}");
                    }
                    None => {
                        return Err(Error::Input(format!(
                            "maneuver {} uses an unlabelled parallel edge",
                            m.id
                        )))
                    }
                }
            }
        } else {
            let _ = write!(out, "maneuver {}", m.penalty);
            for v in m.walk.vertices(g) {
                let _ = write!(out, " {}", g.vertex_name(v));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

/// `walk` line body: vertices, with each edge's label in between when it
/// has one.
fn walk_tokens(g: &Graph, w: &Walk) -> String {
    let mut out = g.vertex_name(w.start()).to_string();
    for &e in w.edges() {
        let edge = g.edge(e);
        if let Some(label) = &edge.label {
            out.push(' ');
            out.push_str(label);
        }
        out.push(' ');
        out.push_str(g.vertex_name(edge.head));
    }
    out
}

pub fn serialize_result(g: &Graph, r: &QueryResult) -> String {
    let mut out = format!("distance {}\n", format_value(r.distance));
    if let Some(w) = &r.walk {
        let _ = writeln!(out, "walk {}", walk_tokens(g, w));
    }
    for (name, value) in r.stats.fields() {
        let _ = writeln!(out, "stat {name} {value}");
    }
    if r.best_effort {
        out.push_str("stat best_effort 1\n");
    }
    out
}

fn parse_walk(g: &Graph, toks: &[Token<'_>]) -> std::result::Result<Walk, (usize, String)> {
    let first = toks[0];
    let start = g
        .vertex(first.text)
        .ok_or_else(|| (first.column, format!("unknown vertex `{}`", first.text)))?;
    let mut at = start;
    let mut edges = Vec::new();
    let mut i = 1;
    while i < toks.len() {
        let tok = toks[i];
        // a label followed by the head of its edge wins over a vertex name
        if let Some(e) = g.edge_by_label(tok.text) {
            let edge = g.edge(e);
            if edge.tail == at && toks.get(i + 1).map(|t| t.text) == Some(g.vertex_name(edge.head)) {
                edges.push(e);
                at = edge.head;
                i += 2;
                continue;
            }
        }
        let next = g
            .vertex(tok.text)
            .ok_or_else(|| (tok.column, format!("unknown vertex or label `{}`", tok.text)))?;
        let unlabelled: Vec<EdgeId> = g
            .edges_between(at, next)
            .into_iter()
            .filter(|&e| g.edge(e).label.is_none())
            .collect();
        match unlabelled.as_slice() {
            [e] => edges.push(*e),
            [] => {
                return Err((
                    tok.column,
                    format!("no unlabelled edge from `{}` to `{}`", g.vertex_name(at), tok.text),
                ))
            }
            _ => return Err((tok.column, format!("ambiguous step to `{}`", tok.text))),
        }
        at = next;
        i += 1;
    }
    Ok(Walk::new(g, start, edges).expect("checked chain"))
}

pub fn parse_result(text: &str, g: &Graph) -> Result<QueryResult, ParseError> {
    let mut diags = Diagnostics(Vec::new());
    let mut distance = None;
    let mut walk = None;
    let mut stats = QueryStats::default();
    let mut best_effort = false;
    for (line, toks) in lines(text) {
        let head = toks[0];
        match head.text {
            "distance" if toks.len() == 2 => {
                let tok = toks[1];
                let parsed = if tok.text == "inf" {
                    Some(f64::INFINITY)
                } else {
                    tok.text.parse::<f64>().ok().filter(|v| v.is_finite())
                };
                match parsed {
                    Some(v) => distance = Some(v + 0.0),
                    None => diags.push(line, tok.column, format!("bad distance `{}`", tok.text)),
                }
            }
            "walk" if toks.len() >= 2 => match parse_walk(g, &toks[1..]) {
                Ok(w) => walk = Some(w),
                Err((col, msg)) => diags.push(line, col, msg),
            },
            "stat" if toks.len() == 3 => {
                let Ok(value) = toks[2].text.parse::<usize>() else {
                    diags.push(line, toks[2].column, format!("bad stat value `{}`", toks[2].text));
                    continue;
                };
                if toks[1].text == "best_effort" {
                    best_effort = value != 0;
                } else if !stats.set(toks[1].text, value) {
                    diags.push(line, toks[1].column, format!("unknown stat `{}`", toks[1].text));
                }
            }
            _ => diags.push(line, head.column, format!("malformed line starting with `{}`", head.text)),
        }
    }
    let Some(distance) = distance else {
        diags.push(1, 1, "missing `distance` line");
        return Err(ParseError { diagnostics: diags.0 });
    };
    if distance.is_finite() != walk.is_some() {
        diags.push(1, 1, "a walk line must be present exactly when the distance is finite");
    }
    diags.finish(QueryResult {
        distance,
        walk,
        stats,
        best_effort,
    })
}

/// `(v,∅)` or `(v,(a,b,c))`.
pub fn format_pair(net: &RoadNetwork, pair: PairKey) -> String {
    format!(
        "({},{})",
        net.graph().vertex_name(pair.vertex),
        format_context(net, pair.context)
    )
}

pub fn format_context(net: &RoadNetwork, x: Context) -> String {
    match net.automaton().context_walk(net.graph(), x) {
        Some(w) => w.display(net.graph()).to_string(),
        None => "∅".to_string(),
    }
}

pub fn format_trace_row(net: &RoadNetwork, row: &TraceRow) -> String {
    let frontier: Vec<String> = row
        .frontier
        .iter()
        .map(|&(pair, d)| format!("{}={}", format_pair(net, pair), format_value(d)))
        .collect();
    let mut out = format!(
        "step {} | scan {} d={} | Q:",
        row.step,
        format_pair(net, row.scanned),
        format_value(row.distance)
    );
    if !frontier.is_empty() {
        out.push(' ');
        out.push_str(&frontier.join("; "));
    }
    out
}

pub fn serialize_trace(net: &RoadNetwork, rows: &[TraceRow]) -> String {
    rows.iter()
        .map(|r| format_trace_row(net, r) + "\n")
        .collect()
}

/// Looks up a vertex for command-line style input.
pub fn vertex_arg(g: &Graph, name: &str) -> Result<VertexId> {
    g.lookup(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::MDijkstra;
    use proptest::prelude::*;

    #[test]
    fn values() {
        assert_eq!(format_value(9.0), "9");
        assert_eq!(format_value(-3.0), "-3");
        assert_eq!(format_value(-0.0), "0");
        assert_eq!(format_value(0.1 + 0.2), "0.30000000000000004");
        assert_eq!(format_value(f64::INFINITY), "inf");
    }

    #[test]
    fn fixture_shapes() {
        let b = fixtures::net_b();
        assert_eq!(b.graph().vertex_count(), 16);
        assert_eq!(b.graph().edge_count(), 17);
        let penalties: Vec<String> = b.maneuvers().iter().map(|m| m.penalty.to_string()).collect();
        assert_eq!(penalties, ["-3", "inf", "5", "9", "0"]);
        let a = fixtures::net_a();
        assert_eq!(a.graph().vertex_count(), 6);
        assert_eq!(a.graph().edge_count(), 10);
        let penalties: Vec<String> = a.maneuvers().iter().map(|m| m.penalty.to_string()).collect();
        assert_eq!(penalties, ["inf", "1"]);
    }

    #[test]
    fn network_errors_carry_positions() {
        let err = parse_network("edge a b 1\nedge a b -1\n").unwrap_err();
        assert_eq!(err.diagnostics.len(), 1);
        assert_eq!((err.diagnostics[0].line, err.diagnostics[0].column), (2, 10));
        assert!(err.diagnostics[0].message.contains("negative"));

        let err = parse_network("edge a b nan\nnode x\nedge a-b c 1\nedge a b 1 l\nedge b a 1 l").unwrap_err();
        let lines: Vec<usize> = err.diagnostics.iter().map(|d| d.line).collect();
        assert_eq!(lines, [1, 2, 3, 5]);
        assert!(parse_network("edge a b inf").is_err());
    }

    #[test]
    fn maneuver_forms() {
        let g = parse_network("edge a b 1 p\nedge a b 2 q\nedge b c 1\n# comment\n").unwrap();
        let err = parse_maneuvers("maneuver 1 a b c\n", &g).unwrap_err();
        assert!(err.diagnostics[0].message.contains("ambiguous"));
        assert_eq!(err.diagnostics[0].column, 14);

        let specs = parse_maneuvers("maneuver* -1 a q\nmaneuver inf b c\nmaneuver 4 c\n", &g).unwrap();
        assert_eq!(specs.len(), 3);
        assert_eq!(g.edge(specs[0].0.edges()[0]).weight, 2.0);
        assert!(specs[1].1.is_infinite());
        assert!(specs[2].0.is_trivial());

        for bad in [
            "maneuver nan a b",
            "maneuver -inf a",
            "maneuver Infinity a",
            "maneuver 1 z",
            "maneuver 1 c a",
            "maneuver* 1 b p",
            "maneuver 1",
        ] {
            assert!(parse_maneuvers(bad, &g).is_err(), "{bad}");
        }

        let net = RoadNetwork::new(g, specs).unwrap();
        let text = serialize_maneuvers(net.graph(), net.maneuvers()).unwrap();
        assert_eq!(text, "maneuver* -1 a q\nmaneuver inf b c\nmaneuver 4 c\n");
    }

    #[test]
    fn network_round_trip() {
        for net in [fixtures::net_a(), fixtures::net_b()] {
            let text = serialize_network(net.graph());
            let g = parse_network(&text).unwrap();
            assert_eq!(&g, net.graph());
            let m = serialize_maneuvers(net.graph(), net.maneuvers()).unwrap();
            let specs = parse_maneuvers(&m, &g).unwrap();
            assert_eq!(specs, net.maneuvers().specs());
        }
    }

    #[test]
    fn golden_result_text() {
        let net = fixtures::net_b();
        let r = MDijkstra::new(&net).unwrap().query_by_name("a", "m").unwrap();
        let text = serialize_result(net.graph(), &r);
        assert!(text.starts_with("distance 9\nwalk a b c d e f g h i j k l m\n"), "{text}");
        assert_eq!(parse_result(&text, net.graph()).unwrap(), r);

        let r = MDijkstra::new(&net).unwrap().query_by_name("t", "a").unwrap();
        let text = serialize_result(net.graph(), &r);
        assert!(text.starts_with("distance inf\nstat "));
        assert!(!text.contains("walk"));
    }

    #[test]
    fn trace_rows() {
        let net = fixtures::net_b();
        let (a, m) = (net.vertex("a").unwrap(), net.vertex("m").unwrap());
        let (_, rows) = MDijkstra::new(&net).unwrap().trace(a, m).unwrap();
        let text = serialize_trace(&net, &rows);
        let first = text.lines().next().unwrap();
        assert_eq!(first, "step 1 | scan (a,∅) d=0 | Q: (b,∅)=1");
        assert!(text.contains("scan (e,(b,c,d,e)) d=4"));
        let last = text.lines().last().unwrap();
        assert!(last.starts_with("step 15 | scan (m,∅) d=9 | Q: "), "{last}");

        let (_, rows) = MDijkstra::new(&net).unwrap().trace(a, a).unwrap();
        assert_eq!(serialize_trace(&net, &rows), "step 1 | scan (a,∅) d=0 | Q: (b,∅)=1\n");
    }

    fn labelled_graph() -> Graph {
        parse_network(
            "edge a b 1 x\nedge a b 2 y\nedge b a 1\nedge b c 3\nedge c a 0.5 z\nedge c c 1\n",
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn result_round_trip(
            choices in proptest::collection::vec(0usize..8, 0..12),
            start in 0u32..3,
            finite in any::<bool>(),
            dist in -1.0e6f64..1.0e6,
            stats in proptest::collection::vec(0usize..1_000_000, 7),
            best_effort in any::<bool>(),
        ) {
            let g = labelled_graph();
            let mut walk = Walk::trivial(VertexId(start));
            for c in choices {
                let out = g.out_edges(walk.end()).unwrap();
                walk.push(&g, out[c % out.len()]).unwrap();
            }
            let mut st = QueryStats::default();
            for (name, v) in QueryStats::NAMES.iter().zip(stats) {
                st.set(name, v);
            }
            let r = QueryResult {
                distance: if finite { dist } else { f64::INFINITY },
                walk: finite.then_some(walk),
                stats: st,
                best_effort,
            };
            let text = serialize_result(&g, &r);
            prop_assert_eq!(parse_result(&text, &g).unwrap(), r);
        }
    }
}
