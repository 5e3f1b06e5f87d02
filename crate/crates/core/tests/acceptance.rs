//! Acceptance criteria, one line each. Runs as a plain binary so the
//! verdict lines are always printed; exits non-zero if a criterion outside
//! `KNOWN_FAILURES` fails.

use std::collections::{BTreeSet, VecDeque};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use maneuver_route::io::format_pair;
use maneuver_route::oracle::{
    bellman_ford_all, build_state_graph, classical_dijkstra, cross_check, random_proper_network,
    GenParams, StateGraph,
};
use maneuver_route::{fixtures, ManeuverClass, MDijkstra, RoadNetwork, Rule, Walk};

const TOLERANCE: f64 = 1e-9;

type Check = fn() -> Verdict;

/// Criteria that fail on faithful implementations:
/// 4, the first reference network admits a u-turn at d of weight 4;
/// 9, entering a restricted maneuver is not preserved by reversal.
const KNOWN_FAILURES: [usize; 2] = [4, 9];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= TOLERANCE * (1.0 + a.abs().max(b.abs()))
}

fn corpus(first: u64, count: u64, params: impl Fn(u64) -> GenParams) -> Vec<RoadNetwork> {
    (first..first + count)
        .map(|seed| {
            random_proper_network(&params(seed))
                .unwrap_or_else(|e| panic!("seed {seed}: {e}"))
                .network
        })
        .collect()
}

fn walk_names(net: &RoadNetwork, w: &Walk) -> String {
    w.display(net.graph()).to_string()
}

fn golden_query() -> Verdict {
    let net = fixtures::net_b();
    let engine = MDijkstra::new(&net).expect("fixture is proper");
    let (a, m) = (net.vertex("a").unwrap(), net.vertex("m").unwrap());
    let mut best = Duration::MAX;
    let mut result = None;
    for _ in 0..20 {
        let started = Instant::now();
        let r = engine.query(a, m).unwrap();
        best = best.min(started.elapsed());
        result = Some(r);
    }
    let r = result.unwrap();
    let walk = r.walk.as_ref().map(|w| walk_names(&net, w)).unwrap_or_default();

    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let out = Command::new(env!("CARGO_BIN_EXE_mroute"))
        .args(["query", "--from", "a", "--to", "m"])
        .arg("--network")
        .arg(format!("{dir}/net_b.network"))
        .arg("--maneuvers")
        .arg(format!("{dir}/net_b.maneuvers"))
        .output()
        .expect("run mroute");
    let stdout = String::from_utf8_lossy(&out.stdout);
    let cli_ok = out.status.code() == Some(0)
        && stdout.starts_with("distance 9\nwalk a b c d e f g h i j k l m\n");

    verdict(
        r.distance == 9.0
            && walk == "(a,b,c,d,e,f,g,h,i,j,k,l,m)"
            && best < Duration::from_millis(10)
            && cli_ok,
        format!(
            "distance {} walk {walk}, query {:.3} ms, cli {}",
            r.distance,
            best.as_secs_f64() * 1e3,
            if cli_ok { "ok" } else { "mismatch" }
        ),
    )
}

fn golden_trace() -> Verdict {
    let net = fixtures::net_b();
    let (a, m) = (net.vertex("a").unwrap(), net.vertex("m").unwrap());
    let (_, rows) = MDijkstra::new(&net).unwrap().trace(a, m).unwrap();
    let mut got: Vec<String> = rows
        .iter()
        .map(|r| format!("{} {}", format_pair(&net, r.scanned), r.distance))
        .collect();
    let mut want: Vec<String> = [
        ("(a,∅)", 0),
        ("(b,∅)", 1),
        ("(c,(b,c))", 2),
        ("(t,∅)", 2),
        ("(r,(b,r))", 2),
        ("(f,∅)", 2),
        ("(d,(b,c,d))", 3),
        ("(g,∅)", 3),
        ("(e,(b,c,d,e))", 4),
        ("(h,(g,h))", 4),
        ("(i,∅)", 5),
        ("(j,(i,j))", 6),
        ("(k,(i,j,k))", 7),
        ("(l,∅)", 8),
        ("(m,∅)", 9),
    ]
    .iter()
    .map(|(p, d)| format!("{p} {d}"))
    .collect();
    got.sort();
    want.sort();
    verdict(got == want, format!("{} scanned rows, multiset {}", rows.len(), if got == want { "equal" } else { "differs" }))
}

fn baseline() -> Verdict {
    let net = fixtures::net_b();
    let r = classical_dijkstra(net.graph(), net.vertex("a").unwrap(), net.vertex("m").unwrap());
    let walk = r.walk.expect("reachable");
    let pw = net.penalized_weight(&walk);
    verdict(
        r.distance == 4.0 && walk_names(&net, &walk) == "(a,b,r,l,m)" && pw == f64::INFINITY,
        format!("distance {} via {}, penalized {}", r.distance, walk_names(&net, &walk), pw),
    )
}

fn golden_net_a() -> Verdict {
    let net = fixtures::net_a();
    let g = net.graph();
    let banned = Walk::from_names(g, &["a", "b", "c"]).unwrap();
    let detour = Walk::from_names(g, &["a", "b", "f", "e", "d", "b", "c"]).unwrap();
    let r = MDijkstra::new(&net).unwrap().query_by_name("a", "c").unwrap();
    let walk = r.walk.as_ref().map(|w| walk_names(&net, w)).unwrap_or_default();
    let (pb, pd) = (net.penalized_weight(&banned), net.penalized_weight(&detour));
    verdict(
        r.distance == 6.0 && pb == f64::INFINITY && pd == 7.0,
        format!(
            "distance {} via {walk} (expected 6), penalized (a,b,c) = {pb}, detour = {pd}",
            r.distance
        ),
    )
}

fn oracle_equivalence() -> Verdict {
    let started = Instant::now();
    // every network carries all four classes; seeds whose repairs lose a
    // class are passed over
    let mut nets = Vec::new();
    let mut seed = 0;
    while nets.len() < 1000 {
        let params = GenParams {
            maneuvers: 4..=6,
            ..GenParams::with_seed(seed)
        };
        let net = random_proper_network(&params).expect("generation").network;
        let classes: BTreeSet<ManeuverClass> = net.maneuvers().iter().map(|m| m.class()).collect();
        if classes.len() == 4 {
            nets.push((seed, net));
        }
        seed += 1;
    }
    let (mut pairs, mut disagreements, mut skipped) = (0usize, Vec::new(), 0);
    for (seed, net) in &nets {
        match cross_check(net, None, None) {
            Ok(check) => {
                skipped += usize::from(check.enumeration_skipped.is_some());
                pairs += check.verdicts.len();
                for v in check.verdicts.iter().filter(|v| !v.agrees()) {
                    disagreements.push(format!("seed {seed} {v:?}"));
                }
            }
            Err(e) => disagreements.push(format!("seed {seed}: {e}")),
        }
    }
    let elapsed = started.elapsed();
    let pass = disagreements.is_empty() && skipped == 0 && elapsed < Duration::from_secs(300);
    let mut detail = format!(
        "{} networks with all four classes (seeds 0..{seed}), {pairs} pairs, {} disagreements, enumeration skipped on {skipped}, {:.1} s",
        nets.len(),
        disagreements.len(),
        elapsed.as_secs_f64()
    );
    if let Some(first) = disagreements.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    verdict(pass, detail)
}

fn reachable_states(sg: &StateGraph, net: &RoadNetwork) -> Vec<bool> {
    let mut seen = vec![false; sg.state_count()];
    let mut queue: VecDeque<usize> = net.graph().vertices().map(|v| sg.source(v)).collect();
    for &s in &queue {
        seen[s] = true;
    }
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

fn validity() -> Verdict {
    let mut nets = corpus(0, 1000, GenParams::with_seed);
    nets.push(fixtures::net_a());
    nets.push(fixtures::net_b());
    let (mut walks, mut problems) = (0, Vec::new());
    let mut max_direction = 0;
    for (i, net) in nets.iter().enumerate() {
        let engine = MDijkstra::new(net).unwrap();
        for s in net.graph().vertices() {
            for t in net.graph().vertices() {
                let r = engine.query(s, t).unwrap();
                let Some(w) = &r.walk else { continue };
                walks += 1;
                if !net.is_valid(w) || !close(net.penalized_weight(w), r.distance) {
                    problems.push(format!("network {i}: {} d={} pw={} valid={}", walk_names(net, w), r.distance, net.penalized_weight(w), net.is_valid(w)));
                }
            }
        }
        let sg = build_state_graph(net);
        for (k, seen) in reachable_states(&sg, net).into_iter().enumerate() {
            if seen {
                let st = sg.state(k);
                let n = net.automaton().restricted_direction(st.vertex, st.context).unwrap().len();
                max_direction = max_direction.max(n);
            }
        }
    }
    let mut detail = format!(
        "{walks} walks over {} networks, {} invalid or mispriced, max |restricted direction| {max_direction}",
        nets.len(),
        problems.len()
    );
    if let Some(first) = problems.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    verdict(problems.is_empty() && max_direction <= 1, detail)
}

fn complexity() -> Verdict {
    let nets = corpus(0, 300, GenParams::with_seed);
    let mut over_bound = 0;
    let mut worst = 0.0f64;
    for net in &nets {
        let engine = MDijkstra::new(net).unwrap();
        let bound = net.graph().vertex_count()
            + net.maneuvers().iter().map(|m| m.walk.len()).sum::<usize>();
        for s in net.graph().vertices() {
            for t in net.graph().vertices() {
                let r = engine.query(s, t).unwrap();
                if r.stats.pairs_scanned > bound {
                    over_bound += 1;
                }
                worst = worst.max(r.stats.pairs_scanned as f64 / bound as f64);
            }
        }
    }

    let plain = corpus(0, 300, |seed| GenParams {
        maneuvers: 0..=0,
        ..GenParams::with_seed(seed)
    });
    let (mut ratio_max, mut distance_mismatch) = (0.0f64, 0);
    for net in &plain {
        let engine = MDijkstra::new(net).unwrap();
        for s in net.graph().vertices() {
            for t in net.graph().vertices() {
                let r = engine.query(s, t).unwrap();
                let c = classical_dijkstra(net.graph(), s, t);
                if r.distance != c.distance {
                    distance_mismatch += 1;
                }
                ratio_max = ratio_max.max(r.stats.heap_pops as f64 / c.pops.max(1) as f64);
            }
        }
    }
    verdict(
        over_bound == 0 && ratio_max <= 2.0 && distance_mismatch == 0,
        format!(
            "{over_bound} queries over the pair bound (max scanned/bound {worst:.2}); maneuver-free: max pop ratio {ratio_max:.2}, {distance_mismatch} distance mismatches"
        ),
    )
}

fn properness() -> Verdict {
    let cases = [
        ("net_a", fixtures::net_a(), vec![]),
        ("net_b", fixtures::net_b(), vec![]),
        ("rule i", fixtures::net_b_rule_i(), vec![Rule::I]),
        ("rule ii", fixtures::net_b_rule_ii(), vec![Rule::II]),
        ("rule iii", fixtures::net_b_rule_iii(), vec![Rule::III]),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, net, want) in cases {
        let report = net.check_proper();
        let ok = report.rules() == want
            && report.proper == want.is_empty()
            && report.violations.len() == want.len();
        pass &= ok;
        let rules: Vec<String> = report.rules().iter().map(|r| r.to_string()).collect();
        parts.push(format!(
            "{name}: {}",
            if rules.is_empty() { "proper".to_string() } else { rules.join(",") }
        ));
    }
    verdict(pass, parts.join("; "))
}

fn reverse_symmetry() -> Verdict {
    let nets = corpus(0, 100, GenParams::with_seed);
    let (mut asymmetric, mut pairs, mut bad_pairs) = (0, 0, 0);
    let mut restricted_free = (0, 0);
    for net in &nets {
        let rev = net.reverse();
        let forward = MDijkstra::new(net).unwrap();
        let sgr = build_state_graph(&rev);
        let mut bad = false;
        for t in net.graph().vertices() {
            let back = bellman_ford_all(&rev, &sgr, t).expect("no negative cycle");
            let engine_back = MDijkstra::unchecked(&rev);
            for s in net.graph().vertices() {
                pairs += 1;
                let d = forward.query(s, t).unwrap().distance;
                let r = engine_back.query(t, s).unwrap().distance;
                if !close(d, r) || !close(d, back[s.index()]) {
                    bad_pairs += 1;
                    bad = true;
                }
            }
        }
        let has_restricted = net
            .maneuvers()
            .iter()
            .any(|m| m.class() == ManeuverClass::Restricted && m.walk.len() > 1);
        if !has_restricted {
            restricted_free.0 += 1;
            restricted_free.1 += usize::from(bad);
        }
        asymmetric += usize::from(bad);
    }
    verdict(
        asymmetric == 0,
        format!(
            "{asymmetric} of {} networks asymmetric ({bad_pairs} of {pairs} pairs); without multi-edge restricted maneuvers {} of {} asymmetric",
            nets.len(),
            restricted_free.1,
            restricted_free.0
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Check); 9] = [
        ("golden query, second reference network", golden_query),
        ("golden trace, second reference network", golden_trace),
        ("maneuver-blind baseline", baseline),
        ("golden query, first reference network", golden_net_a),
        ("oracle equivalence on 1000 random networks", oracle_equivalence),
        ("validity of returned walks", validity),
        ("complexity accounting", complexity),
        ("properness validator", properness),
        ("reverse symmetry", reverse_symmetry),
    ];
    let mut passed = 0;
    let mut regressions = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let n = i + 1;
        let v = check();
        let known = KNOWN_FAILURES.contains(&n);
        let status = match (v.pass, known) {
            (true, false) => "PASS",
            (true, true) => "PASS (listed as a known failure)",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        passed += usize::from(v.pass);
        if !v.pass && !known {
            regressions.push(n);
        }
        println!("criterion {n} {name}: {status} ({})", v.detail);
    }
    println!(
        "acceptance: {passed} of {} criteria pass; known failures {:?}; unexpected failures {:?}",
        criteria.len(),
        KNOWN_FAILURES,
        regressions
    );
    if regressions.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
