//! Building a network by hand: a banned turn and a turn delay on the first
//! reference network, then the cheapest way around them.

use maneuver_route::{Graph, MDijkstra, Penalty, RoadNetwork, Walk};

fn main() -> maneuver_route::Result<()> {
    let mut g = Graph::new();
    for (t, h) in [
        ("a", "b"), ("b", "c"), ("b", "f"), ("b", "d"), ("d", "b"),
        ("d", "e"), ("e", "d"), ("e", "f"), ("f", "e"), ("f", "b"),
    ] {
        g.add_named_edge(t, h, 1.0, None)?;
    }
    let straight = Walk::from_names(&g, &["a", "b", "c"])?;
    let right = Walk::from_names(&g, &["a", "b", "f"])?;
    let net = RoadNetwork::new(
        g,
        vec![
            (straight.clone(), Penalty::INFINITE),
            (right, Penalty::new(1.0)?),
        ],
    )?;
    let g = net.graph();

    println!("(a,b,c) costs {}", net.penalized_weight(&straight));
    let detour = Walk::from_names(g, &["a", "b", "f", "e", "d", "b", "c"])?;
    println!("{} costs {}", detour.display(g), net.penalized_weight(&detour));

    // b→d and d→b are both roads, so turning around at d is cheaper still
    let r = MDijkstra::new(&net)?.query_by_name("a", "c")?;
    println!("best: {} via {}", r.distance, r.walk.unwrap().display(g));
    Ok(())
}
