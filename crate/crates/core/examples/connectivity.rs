//! Strong connectivity when maneuvers are taken into account.

use maneuver_route::oracle::is_strongly_connected;
use maneuver_route::{fixtures, Graph, Penalty, RoadNetwork, Walk};

fn triangle(bans: &[[&str; 3]]) -> maneuver_route::Result<RoadNetwork> {
    let mut g = Graph::new();
    for (t, h) in [("x", "y"), ("y", "z"), ("z", "x"), ("y", "x"), ("z", "y"), ("x", "z")] {
        g.add_named_edge(t, h, 1.0, None)?;
    }
    let mut specs = Vec::new();
    for ban in bans {
        specs.push((Walk::from_names(&g, ban)?, Penalty::INFINITE));
    }
    RoadNetwork::new(g, specs)
}

fn main() -> maneuver_route::Result<()> {
    println!("second reference network: {}", is_strongly_connected(&fixtures::net_b()));
    println!("two-way triangle: {}", is_strongly_connected(&triangle(&[])?));
    // no u-turns and no left turns: arriving at y from x there is no way on
    let banned = triangle(&[["x", "y", "x"], ["x", "y", "z"]])?;
    println!("triangle with bans: {}", is_strongly_connected(&banned));
    Ok(())
}
