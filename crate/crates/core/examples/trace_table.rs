//! Step-by-step trace of a query: each scanned vertex-context pair and the
//! frontier left behind.

use maneuver_route::io::serialize_trace;
use maneuver_route::{fixtures, MDijkstra};

fn main() -> maneuver_route::Result<()> {
    let net = fixtures::net_b();
    let (r, rows) = MDijkstra::new(&net)?.trace(net.vertex("a")?, net.vertex("m")?)?;
    print!("{}", serialize_trace(&net, &rows));
    println!("distance {}", r.distance);
    Ok(())
}
