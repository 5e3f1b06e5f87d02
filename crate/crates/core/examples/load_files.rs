//! Reading networks and maneuvers from the text formats, reporting parse
//! errors, and writing results back out.
//!
//! ```text
//! cargo run --example load_files -- fixtures/net_b.network fixtures/net_b.maneuvers a m
//! ```

use std::fs;

use maneuver_route::io::{parse_maneuvers, parse_network, parse_result, serialize_result};
use maneuver_route::{MDijkstra, RoadNetwork};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (net_path, man_path, from, to) = match args.as_slice() {
        [n, m, s, t] => (n.clone(), m.clone(), s.clone(), t.clone()),
        _ => (
            format!("{dir}/net_b.network"),
            format!("{dir}/net_b.maneuvers"),
            "a".into(),
            "m".into(),
        ),
    };

    let g = parse_network(&fs::read_to_string(&net_path)?)?;
    let specs = parse_maneuvers(&fs::read_to_string(&man_path)?, &g)?;
    let net = RoadNetwork::new(g, specs)?;

    let r = MDijkstra::new(&net)?.query_by_name(&from, &to)?;
    let text = serialize_result(net.graph(), &r);
    print!("{text}");
    assert_eq!(parse_result(&text, net.graph())?.distance, r.distance);

    let broken = "edge a b 1\nedge b c -2\nedge c 1\n";
    if let Err(e) = parse_network(broken) {
        for d in &e.diagnostics {
            println!("bad input: {d}");
        }
    }
    Ok(())
}
