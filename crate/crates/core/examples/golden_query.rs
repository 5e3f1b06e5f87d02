//! Shortest valid walk on the second reference network, with and without
//! maneuvers.
//!
//! ```text
//! cargo run --example golden_query
//! ```

use maneuver_route::oracle::classical_dijkstra;
use maneuver_route::{fixtures, MDijkstra};

fn main() -> maneuver_route::Result<()> {
    let net = fixtures::net_b();
    let g = net.graph();

    let blind = classical_dijkstra(g, net.vertex("a")?, net.vertex("m")?);
    let blind_walk = blind.walk.expect("m is reachable");
    println!(
        "ignoring maneuvers: {} via {}, but that walk costs {}",
        blind.distance,
        blind_walk.display(g),
        net.penalized_weight(&blind_walk)
    );

    let engine = MDijkstra::new(&net)?;
    let r = engine.query_by_name("a", "m")?;
    println!(
        "with maneuvers:     {} via {}",
        r.distance,
        r.walk.as_ref().unwrap().display(g)
    );
    println!(
        "scanned {} pairs (bound {}), {} relaxations",
        r.stats.pairs_scanned, r.stats.pair_bound, r.stats.relaxations
    );
    Ok(())
}
