//! Reversing a network and its maneuvers. Distances agree in both
//! directions unless a restricted maneuver can be joined midway.

use maneuver_route::{fixtures, Graph, MDijkstra, Penalty, RoadNetwork, Walk};

fn main() -> maneuver_route::Result<()> {
    let net = fixtures::net_b();
    let rev = net.reverse();
    let (fwd, back) = (MDijkstra::new(&net)?, MDijkstra::new(&rev)?);
    let there = fwd.query_by_name("a", "m")?;
    let back_again = back.query_by_name("m", "a")?;
    println!("a->m {} | reversed m->a {}", there.distance, back_again.distance);
    println!("reversed walk {}", back_again.walk.unwrap().display(rev.graph()));

    // joining (p,q,r) at q is free going forward; backwards it is entered
    // at its first edge and must be finished
    let mut g = Graph::new();
    for (t, h) in [("p", "q"), ("q", "r"), ("s", "q")] {
        g.add_named_edge(t, h, 1.0, None)?;
    }
    let r = Walk::from_names(&g, &["p", "q", "r"])?;
    let small = RoadNetwork::new(g, vec![(r, Penalty::ZERO)])?;
    let d = MDijkstra::new(&small)?.query_by_name("s", "r")?.distance;
    let small_rev = small.reverse();
    let e = MDijkstra::new(&small_rev)?.query_by_name("r", "s")?.distance;
    println!("s->r {d} | reversed r->s {e}");
    Ok(())
}
