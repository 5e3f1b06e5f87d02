//! Checking the properness rules, and what happens when a network breaks
//! them.

use maneuver_route::{fixtures, Error, MDijkstra, ManeuverId, Penalty};

fn main() -> maneuver_route::Result<()> {
    let net = fixtures::net_b();
    println!("reference network: {}", net.check_proper());

    for (name, bad) in [
        ("divergent restricted pair", fixtures::net_b_rule_i()),
        ("overhanging negatives", fixtures::net_b_rule_ii()),
        ("discount too large", fixtures::net_b_rule_iii()),
    ] {
        println!("\n{name}:\n{}", bad.check_proper());
    }

    // the largest discount M1 may carry
    let m1 = ManeuverId(0);
    println!("\nM1 may go as low as {}", net.penalty_floor(m1));

    let too_cheap = net.with_penalty(m1, Penalty::new(-5.0)?)?;
    match MDijkstra::new(&too_cheap) {
        Err(Error::Improper(report)) => println!("refused: {} violation(s)", report.violations.len()),
        other => println!("unexpected: {:?}", other.map(|_| ())),
    }
    let r = MDijkstra::unchecked(&too_cheap).query_by_name("a", "m")?;
    println!("unchecked anyway: {} (best effort: {})", r.distance, r.best_effort);
    Ok(())
}
