//! Comparing the search with Bellman-Ford on the expanded state graph and
//! with exhaustive walk enumeration.

use maneuver_route::io::format_value;
use maneuver_route::oracle::{build_state_graph, cross_check};
use maneuver_route::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let net = fixtures::net_a();
    let sg = build_state_graph(&net);
    println!("state graph: {} states, {} arcs", sg.state_count(), sg.arc_count());

    let check = cross_check(&net, None, None)?;
    let g = net.graph();
    for v in &check.verdicts {
        if v.source == v.target {
            continue;
        }
        println!(
            "{} -> {}: engine {} bellman-ford {} enumeration {}",
            g.vertex_name(v.source),
            g.vertex_name(v.target),
            format_value(v.engine),
            format_value(v.bellman_ford),
            v.enumeration.map_or("-".into(), format_value)
        );
    }
    println!("all agree: {}", check.all_agree());

    // the second network is over the enumeration cap
    let check = cross_check(&fixtures::net_b(), None, None)?;
    println!(
        "second network: {} pairs, all agree: {}, enumeration skipped: {}",
        check.verdicts.len(),
        check.all_agree(),
        check.enumeration_skipped.is_some()
    );
    Ok(())
}
