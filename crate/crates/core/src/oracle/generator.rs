//! Seeded random proper networks for differential testing.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::maneuver::{ManeuverClass, Penalty, RoadNetwork};
use crate::network::{Graph, VertexId, Walk};
use crate::proper::Rule;

use super::OracleError;

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub seed: u64,
    pub vertices: RangeInclusive<usize>,
    /// raised to the vertex count when smaller, so that the graph can carry
    /// a spanning cycle
    pub edges: RangeInclusive<usize>,
    /// integer edge weights
    pub weights: RangeInclusive<u32>,
    pub maneuvers: RangeInclusive<usize>,
    /// maneuver length in edges
    pub maneuver_edges: RangeInclusive<usize>,
    /// relative odds of negative, positive, restricted and prohibited
    pub class_mix: [f64; 4],
    /// magnitude of finite nonzero penalties
    pub penalties: RangeInclusive<u32>,
    /// chance that the first edges form a cycle through every vertex
    pub cycle_probability: f64,
    /// repair attempts before giving up
    pub retries: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            vertices: 3..=12,
            edges: 6..=25,
            weights: 0..=9,
            maneuvers: 1..=6,
            maneuver_edges: 0..=4,
            class_mix: [0.3, 0.25, 0.2, 0.25],
            penalties: 1..=9,
            cycle_probability: 0.8,
            retries: 64,
        }
    }
}

impl GenParams {
    pub fn with_seed(seed: u64) -> Self {
        GenParams {
            seed,
            ..GenParams::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub network: RoadNetwork,
    /// `gen <seed> <step> <choice>` lines
    pub log: Vec<String>,
}

struct Log {
    seed: u64,
    lines: Vec<String>,
}

impl Log {
    fn push(&mut self, choice: impl std::fmt::Display) {
        let step = self.lines.len() + 1;
        self.lines.push(format!("gen {} {} {}", self.seed, step, choice));
    }
}

fn pick_class(rng: &mut ChaCha8Rng, mix: &[f64; 4]) -> ManeuverClass {
    let total: f64 = mix.iter().sum();
    let mut x = rng.gen::<f64>() * total;
    let classes = [
        ManeuverClass::Negative,
        ManeuverClass::Positive,
        ManeuverClass::Restricted,
        ManeuverClass::Prohibited,
    ];
    for (class, &w) in classes.iter().zip(mix) {
        if x < w {
            return *class;
        }
        x -= w;
    }
    ManeuverClass::Prohibited
}

/// Draws a random multigraph with random maneuvers, then repairs penalties
/// until the network is proper. Same parameters, same network.
pub fn random_proper_network(params: &GenParams) -> Result<Generated, OracleError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut log = Log {
        seed: params.seed,
        lines: Vec::new(),
    };

    let n = rng.gen_range(params.vertices.clone());
    let lo = (*params.edges.start()).max(n.min(*params.edges.end()));
    let m = rng.gen_range(lo..=*params.edges.end());
    log.push(format_args!("shape {n} vertices {m} edges"));

    let mut g = Graph::new();
    for i in 0..n {
        g.ensure_vertex(&format!("v{i}")).expect("valid name");
    }
    let mut pairs = Vec::with_capacity(m);
    if m >= n && n > 1 && rng.gen_bool(params.cycle_probability) {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        for i in 0..n {
            pairs.push((order[i], order[(i + 1) % n]));
        }
        log.push("spanning cycle");
    }
    while pairs.len() < m {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    for (i, (t, h)) in pairs.into_iter().enumerate() {
        let w = rng.gen_range(params.weights.clone()) as f64;
        g.add_edge(VertexId(t as u32), VertexId(h as u32), w, Some(&format!("e{i}")))
            .expect("valid edge");
        log.push(format_args!("edge e{i} v{t} v{h} {w}"));
    }

    let k = rng.gen_range(params.maneuvers.clone());
    let mut specs = Vec::with_capacity(k);
    for i in 0..k {
        let class = pick_class(&mut rng, &params.class_mix);
        let len = rng.gen_range(params.maneuver_edges.clone());
        let start = VertexId(rng.gen_range(0..n) as u32);
        let mut walk = Walk::trivial(start);
        for _ in 0..len {
            let out = g.out_edges(walk.end()).expect("known vertex");
            let Some(&e) = out.choose(&mut rng) else { break };
            walk.push(&g, e).expect("edge leaves the walk end");
        }
        let magnitude = rng.gen_range(params.penalties.clone()) as f64;
        let penalty = match class {
            ManeuverClass::Negative => Penalty::new(-magnitude),
            ManeuverClass::Positive => Penalty::new(magnitude),
            ManeuverClass::Restricted => Ok(Penalty::ZERO),
            ManeuverClass::Prohibited => Ok(Penalty::INFINITE),
        }
        .expect("valid penalty");
        log.push(format_args!(
            "maneuver M{} {} {}",
            i + 1,
            penalty,
            walk.display(&g)
        ));
        specs.push((walk, penalty));
    }

    let mut net = RoadNetwork::new(g, specs)?;
    for round in 0..=params.retries {
        let report = net.check_proper();
        if report.proper {
            log.push("proper");
            return Ok(Generated {
                network: net,
                log: log.lines,
            });
        }
        if round == params.retries {
            break;
        }
        // repair every reported violation at once; a maneuver named by
        // several is repaired for the first only
        let mut specs = net.maneuvers().specs();
        let mut touched = vec![false; specs.len()];
        for v in &report.violations {
            let (target, penalty) = match v.rule {
                // the later maneuver of the pair becomes a plain delay
                Rule::I | Rule::II => {
                    let id = *v.maneuvers.last().expect("violations name maneuvers");
                    let p = rng.gen_range(params.penalties.clone()) as f64;
                    (id, Penalty::new(p).expect("finite"))
                }
                Rule::III => {
                    let id = v.maneuvers[0];
                    (id, Penalty::new(net.penalty_floor(id)).expect("bound is finite"))
                }
            };
            if std::mem::replace(&mut touched[target.index()], true) {
                continue;
            }
            log.push(format_args!("repair rule {} {} -> {}", v.rule, target, penalty));
            specs[target.index()].1 = penalty;
        }
        net = RoadNetwork::new(net.graph().clone(), specs)?;
    }
    Err(OracleError::Generation(format!(
        "seed {}: not proper after {} repairs",
        params.seed, params.retries
    )))
}

/// Generated networks for seeds `first..first + count`.
pub fn corpus(first: u64, count: u64) -> impl Iterator<Item = Result<Generated, OracleError>> {
    (first..first + count).map(|seed| random_proper_network(&GenParams::with_seed(seed)))
}
