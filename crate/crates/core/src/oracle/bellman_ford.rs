use crate::maneuver::RoadNetwork;
use crate::network::VertexId;

use super::state_graph::StateGraph;
use super::OracleError;

/// Label-correcting distances from `(s,∅)` to every state. Fails if a
/// negative cycle is reachable from the source.
pub fn bellman_ford_states(
    net: &RoadNetwork,
    sg: &StateGraph,
    s: VertexId,
) -> Result<Vec<f64>, OracleError> {
    let n = sg.state_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    let offset = sg.source_offset(s);
    if offset == f64::INFINITY {
        return Ok(dist);
    }
    dist[sg.source(s)] = offset;

    let mut changed = true;
    let mut rounds = 0;
    while changed && rounds < n {
        changed = false;
        rounds += 1;
        for u in 0..n {
            if dist[u] == f64::INFINITY {
                continue;
            }
            for arc in sg.arcs(u) {
                let candidate = dist[u] + arc.weight;
                if candidate < dist[arc.to] {
                    dist[arc.to] = candidate;
                    pred[arc.to] = Some(u);
                    changed = true;
                }
            }
        }
    }
    if !changed {
        return Ok(dist);
    }

    // still improving after n rounds: some predecessor chain loops
    let start = (0..n)
        .find(|&v| {
            sg.arcs(v)
                .iter()
                .any(|a| dist[v] < f64::INFINITY && dist[v] + a.weight < dist[a.to])
        })
        .expect("an arc is still relaxable");
    let mut at = start;
    for _ in 0..n {
        at = pred[at].unwrap_or(at);
    }
    let mut cycle = vec![at];
    let mut cur = pred[at].expect("on a cycle");
    while cur != at {
        cycle.push(cur);
        cur = pred[cur].expect("on a cycle");
    }
    cycle.reverse();
    let names: Vec<String> = cycle
        .iter()
        .map(|&i| crate::io::format_pair(net, sg.state(i)))
        .collect();
    Err(OracleError::NegativeCycle(names.join(" -> ")))
}

/// Minimum over all contexts at `t`.
pub fn min_at(sg: &StateGraph, dist: &[f64], t: VertexId) -> f64 {
    sg.states_at(t)
        .iter()
        .map(|&i| dist[i])
        .fold(f64::INFINITY, f64::min)
}

pub fn bellman_ford_distance(
    net: &RoadNetwork,
    sg: &StateGraph,
    s: VertexId,
    t: VertexId,
) -> Result<f64, OracleError> {
    Ok(min_at(sg, &bellman_ford_states(net, sg, s)?, t))
}

/// Distances from `s` to every vertex, indexed by vertex id.
pub fn bellman_ford_all(
    net: &RoadNetwork,
    sg: &StateGraph,
    s: VertexId,
) -> Result<Vec<f64>, OracleError> {
    let dist = bellman_ford_states(net, sg, s)?;
    Ok(net.graph().vertices().map(|t| min_at(sg, &dist, t)).collect())
}
