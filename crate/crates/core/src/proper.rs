//! Structural conditions under which the maneuver-aware search is exact.
//!
//! A network is proper when
//!  - i: no two restricted maneuvers are divergent,
//!  - ii: no two negative maneuvers overhang one another,
//!  - iii: every maneuver `N` has `Δ(N) ≥ -|N|` where `|N|` is the penalized
//!    weight of `N`'s walk computed without `N` itself.

use std::fmt;

use crate::maneuver::{divergent, overhang_lengths, conflicting_occurrence, ManeuverClass, ManeuverId, RoadNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// divergent restricted maneuvers
    I,
    /// overhanging negative maneuvers
    II,
    /// penalty below the lower bound
    III,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::I => "i",
            Rule::II => "ii",
            Rule::III => "iii",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub rule: Rule,
    pub maneuvers: Vec<ManeuverId>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PropernessReport {
    pub proper: bool,
    pub violations: Vec<Violation>,
}

impl PropernessReport {
    pub fn rules(&self) -> Vec<Rule> {
        let mut rules: Vec<Rule> = self.violations.iter().map(|v| v.rule).collect();
        rules.sort();
        rules.dedup();
        rules
    }
}

impl fmt::Display for PropernessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.proper {
            return write!(f, "proper");
        }
        writeln!(f, "not proper: {} violation(s)", self.violations.len())?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "rule {}: {}", v.rule, v.detail)?;
        }
        Ok(())
    }
}

impl RoadNetwork {
    /// Lowest penalty maneuver `id` may carry: minus the penalized weight of
    /// its walk without it. Zero-edge maneuvers at the first vertex are left
    /// out; they are paid on arrival, before the maneuver starts, and
    /// back-to-back occurrences share that visit.
    pub fn penalty_floor(&self, id: ManeuverId) -> f64 {
        let walk = &self.maneuvers().get(id).walk;
        let rest = self.penalized_weight_excluding(walk, Some(id));
        if walk.is_trivial() {
            return -rest;
        }
        let shared: f64 = self
            .maneuvers()
            .zero_edge_at(walk.start())
            .iter()
            .filter(|&&z| z != id)
            .map(|&z| self.maneuvers().get(z).penalty.value())
            .sum();
        if shared.is_infinite() || rest.is_infinite() {
            return f64::NEG_INFINITY;
        }
        shared - rest
    }

    pub fn check_proper(&self) -> PropernessReport {
        let g = self.graph();
        let ms = self.maneuvers();
        let show = |id: ManeuverId| format!("{id} {}", ms.get(id).walk.display(g));
        let mut violations = Vec::new();

        let of_class = |c: ManeuverClass| -> Vec<ManeuverId> {
            ms.iter().filter(|m| m.class() == c).map(|m| m.id).collect()
        };

        let restricted = of_class(ManeuverClass::Restricted);
        for (i, &a) in restricted.iter().enumerate() {
            let wa = ms.get(a).walk.edges();
            if conflicting_occurrence(wa, wa, 1) {
                violations.push(Violation {
                    rule: Rule::I,
                    maneuvers: vec![a],
                    detail: format!("restricted {} diverges from itself", show(a)),
                });
            }
            for &b in &restricted[i + 1..] {
                let wb = ms.get(b).walk.edges();
                if divergent(g, &ms.get(a).walk, &ms.get(b).walk)
                    || conflicting_occurrence(wa, wb, 0)
                    || conflicting_occurrence(wb, wa, 0)
                {
                    violations.push(Violation {
                        rule: Rule::I,
                        maneuvers: vec![a, b],
                        detail: format!("restricted {} and {} are divergent", show(a), show(b)),
                    });
                }
            }
        }

        let negative = of_class(ManeuverClass::Negative);
        for &a in &negative {
            let wa = ms.get(a).walk.edges();
            // a negative maneuver overlapping itself repeats its discount on
            // a cycle, which the pairwise rule would miss
            if overhang_lengths(wa, wa).any(|k| k < wa.len()) {
                violations.push(Violation {
                    rule: Rule::II,
                    maneuvers: vec![a],
                    detail: format!("negative {} overhangs itself", show(a)),
                });
            }
            for &b in &negative {
                if a == b {
                    continue;
                }
                let wb = ms.get(b).walk.edges();
                if overhang_lengths(wa, wb).next().is_some() {
                    violations.push(Violation {
                        rule: Rule::II,
                        maneuvers: vec![a, b],
                        detail: format!("negative {} overhangs {}", show(b), show(a)),
                    });
                }
            }
        }

        for m in ms.iter() {
            let floor = self.penalty_floor(m.id);
            if m.penalty.value() < floor {
                violations.push(Violation {
                    rule: Rule::III,
                    maneuvers: vec![m.id],
                    detail: format!(
                        "{} has penalty {} below the bound {}",
                        show(m.id),
                        m.penalty,
                        crate::io::format_value(floor)
                    ),
                });
            }
        }

        PropernessReport {
            proper: violations.is_empty(),
            violations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::network::{Graph, Walk};
    use crate::Penalty;

    #[test]
    fn fixtures_are_proper() {
        assert!(fixtures::net_a().check_proper().proper);
        assert!(fixtures::net_b().check_proper().proper);
    }

    #[test]
    fn mutated_fixtures_violate_exactly_one_rule() {
        for (net, rule) in [
            (fixtures::net_b_rule_i(), Rule::I),
            (fixtures::net_b_rule_ii(), Rule::II),
            (fixtures::net_b_rule_iii(), Rule::III),
        ] {
            let report = net.check_proper();
            assert!(!report.proper);
            assert_eq!(report.rules(), vec![rule], "{report}");
        }
    }

    #[test]
    fn rule_iii_bound_on_m1() {
        let net = fixtures::net_b();
        let m1 = ManeuverId(0);
        let ok = net.with_penalty(m1, Penalty::new(-4.0).unwrap()).unwrap();
        assert!(ok.check_proper().proper);
        let bad = net.with_penalty(m1, Penalty::new(-5.0).unwrap()).unwrap();
        let report = bad.check_proper();
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].maneuvers, vec![m1]);
    }

    #[test]
    fn canonical_divergent_restricted_pair() {
        let mut g = Graph::new();
        for (t, h) in [("u", "v"), ("v", "x"), ("v", "y")] {
            g.add_named_edge(t, h, 1.0, None).unwrap();
        }
        let r1 = Walk::from_names(&g, &["u", "v", "x"]).unwrap();
        let r2 = Walk::from_names(&g, &["u", "v", "y"]).unwrap();
        let net = RoadNetwork::new(g, vec![(r1, Penalty::ZERO), (r2, Penalty::ZERO)]).unwrap();
        let report = net.check_proper();
        assert_eq!(report.rules(), vec![Rule::I]);
    }

    #[test]
    fn self_overlapping_negative_maneuver() {
        let mut g = Graph::new();
        g.add_named_edge("u", "v", 1.0, None).unwrap();
        g.add_named_edge("v", "u", 1.0, None).unwrap();
        let n = Walk::from_names(&g, &["u", "v", "u", "v"]).unwrap();
        let net = RoadNetwork::new(g, vec![(n, Penalty::new(-3.0).unwrap())]).unwrap();
        let report = net.check_proper();
        assert_eq!(report.rules(), vec![Rule::II]);
    }

    #[test]
    fn restricted_maneuver_diverging_from_itself() {
        let mut g = Graph::new();
        for (t, h) in [("a", "b"), ("b", "a"), ("b", "c")] {
            g.add_named_edge(t, h, 1.0, None).unwrap();
        }
        // a second lap (a,b,a,...) would leave b towards a, the first towards c
        let r = Walk::from_names(&g, &["a", "b", "a", "b", "c"]).unwrap();
        let net = RoadNetwork::new(g.clone(), vec![(r, Penalty::ZERO)]).unwrap();
        assert_eq!(net.check_proper().rules(), vec![Rule::I]);

        let periodic = Walk::from_names(&g, &["a", "b", "a", "b"]).unwrap();
        let net = RoadNetwork::new(g, vec![(periodic, Penalty::ZERO)]).unwrap();
        assert!(net.check_proper().proper);
    }

    #[test]
    fn repeated_loop_cannot_cancel_a_shared_vertex_penalty_twice() {
        let mut g = Graph::new();
        g.add_named_edge("v", "v", 2.0, None).unwrap();
        let lap = Walk::from_names(&g, &["v", "v"]).unwrap();
        let at_v = Walk::trivial(g.vertex("v").unwrap());
        let with = |p: f64| {
            RoadNetwork::new(
                g.clone(),
                vec![(lap.clone(), Penalty::new(p).unwrap()), (at_v.clone(), Penalty::new(2.0).unwrap())],
            )
            .unwrap()
        };
        // the lap itself prices at 6, but each further lap only adds 4
        assert_eq!(with(-6.0).check_proper().rules(), vec![Rule::III]);
        assert!(with(-4.0).check_proper().proper);
    }
}
