//! Seeded random proper networks, the generator log, and a differential
//! check over a small corpus.

use maneuver_route::io::{serialize_maneuvers, serialize_network};
use maneuver_route::oracle::{cross_check, random_proper_network, GenParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let generated = random_proper_network(&GenParams::with_seed(7))?;
    for line in &generated.log {
        println!("{line}");
    }
    let g = generated.network.graph();
    print!("{}", serialize_network(g));
    print!("{}", serialize_maneuvers(g, generated.network.maneuvers())?);

    let mut pairs = 0;
    for seed in 0..200 {
        let net = random_proper_network(&GenParams::with_seed(seed))?.network;
        let check = cross_check(&net, None, None)?;
        assert!(check.all_agree(), "seed {seed}");
        pairs += check.verdicts.len();
    }
    println!("200 networks, {pairs} pairs, no disagreement");
    Ok(())
}
