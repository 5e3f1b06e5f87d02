//! Small reference networks shipped with the crate.
//!
//! `net_a`: six vertices, a prohibited turn `(a,b,c)` and a delayed turn
//! `(a,b,f)`. `net_b`: sixteen vertices with one maneuver of every class,
//! plus three variants that each break one properness rule.

use crate::io::parse_road_network;
use crate::maneuver::RoadNetwork;

pub const NET_A_NETWORK: &str = include_str!("../fixtures/net_a.network");
pub const NET_A_MANEUVERS: &str = include_str!("../fixtures/net_a.maneuvers");
pub const NET_B_NETWORK: &str = include_str!("../fixtures/net_b.network");
pub const NET_B_MANEUVERS: &str = include_str!("../fixtures/net_b.maneuvers");
pub const NET_B_RULE_I_MANEUVERS: &str = include_str!("../fixtures/net_b_rule_i.maneuvers");
pub const NET_B_RULE_II_MANEUVERS: &str = include_str!("../fixtures/net_b_rule_ii.maneuvers");
pub const NET_B_RULE_III_MANEUVERS: &str = include_str!("../fixtures/net_b_rule_iii.maneuvers");

fn load(network: &str, maneuvers: &str) -> RoadNetwork {
    parse_road_network(network, maneuvers).expect("bundled fixture parses")
}

pub fn net_a() -> RoadNetwork {
    load(NET_A_NETWORK, NET_A_MANEUVERS)
}

pub fn net_b() -> RoadNetwork {
    load(NET_B_NETWORK, NET_B_MANEUVERS)
}

/// `net_b` plus a restricted `(h,i,j)` diverging from `(i,j,k,l)`.
pub fn net_b_rule_i() -> RoadNetwork {
    load(NET_B_NETWORK, NET_B_RULE_I_MANEUVERS)
}

/// `net_b` plus a negative `(e,f,g)` overhanging `(b,c,d,e,f)`.
pub fn net_b_rule_ii() -> RoadNetwork {
    load(NET_B_NETWORK, NET_B_RULE_II_MANEUVERS)
}

/// `net_b` with the `(b,c,d,e,f)` discount deepened to -5.
pub fn net_b_rule_iii() -> RoadNetwork {
    load(NET_B_NETWORK, NET_B_RULE_III_MANEUVERS)
}
