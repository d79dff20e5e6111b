//! Seeded instance generators.
//!
//! All generators are pure functions of their arguments. Randomness comes
//! from a ChaCha8 stream seeded with the caller's 64-bit seed, so outputs
//! are stable across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{within_unit_disk, GraphError, Instance, NodeId, WeightedGraph};

/// Connection attempts made by [`gen_udg`] before giving up.
pub const UDG_RETRY_BUDGET: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid generator parameter: {0}")]
    Param(String),
    #[error("could not generate connected UDG after {0} attempts")]
    DisconnectedUdg(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn check_cost_range((lo, hi): (f64, f64)) -> Result<(), GenError> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
        return Err(GenError::Param(format!(
            "cost range must satisfy 0 < lo <= hi, got ({lo}, {hi})"
        )));
    }
    Ok(())
}

fn sample_cost(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}

/// Random connected graph: a uniformly shuffled random spanning tree, then
/// every remaining pair independently with probability `edge_prob`.
pub fn gen_random_connected(
    n: usize,
    edge_prob: f64,
    cost_range: (f64, f64),
    m: usize,
    seed: u64,
) -> Result<Instance, GenError> {
    if n == 0 {
        return Err(GenError::Param("n must be at least 1".into()));
    }
    if !(edge_prob > 0.0 && edge_prob <= 1.0) {
        return Err(GenError::Param(format!(
            "edge probability {edge_prob} not in (0, 1]"
        )));
    }
    check_cost_range(cost_range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut order: Vec<NodeId> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut adj = vec![vec![false; n]; n];
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let child = order[i];
        adj[parent][child] = true;
        adj[child][parent] = true;
    }
    let mut edges = Vec::new();
    for (u, row) in adj.iter().enumerate() {
        for (v, &tree) in row.iter().enumerate().skip(u + 1) {
            if tree || rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    let costs = (0..n).map(|_| sample_cost(&mut rng, cost_range)).collect();
    let graph = WeightedGraph::new(costs, &edges, None)?;
    let label = format!("random-n{n}-p{edge_prob}-m{m}-s{seed}");
    Ok(Instance::new(graph, m, label)?)
}

fn udg_edges(points: &[(f64, f64)]) -> Vec<(NodeId, NodeId)> {
    let mut edges = Vec::new();
    for u in 0..points.len() {
        for v in u + 1..points.len() {
            if within_unit_disk(points[u], points[v]) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn is_connected(n: usize, edges: &[(NodeId, NodeId)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut pieces = n;
    for &(u, v) in edges {
        let (a, b) = (root(&mut parent, u), root(&mut parent, v));
        if a != b {
            parent[a] = b;
            pieces -= 1;
        }
    }
    pieces == 1
}

/// Unit disk graph over `n` uniform points in `[0, side]^2`. Point sets are
/// resampled until the graph is connected; costs are drawn once connectivity
/// holds.
pub fn gen_udg(
    n: usize,
    side: f64,
    cost_range: (f64, f64),
    m: usize,
    seed: u64,
) -> Result<Instance, GenError> {
    if n == 0 {
        return Err(GenError::Param("n must be at least 1".into()));
    }
    if !(side.is_finite() && side > 0.0) {
        return Err(GenError::Param(format!("side {side} must be positive")));
    }
    check_cost_range(cost_range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..UDG_RETRY_BUDGET {
        let points: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.gen_range(0.0..=side), rng.gen_range(0.0..=side)))
            .collect();
        let edges = udg_edges(&points);
        if !is_connected(n, &edges) {
            continue;
        }
        let costs = (0..n).map(|_| sample_cost(&mut rng, cost_range)).collect();
        let graph = WeightedGraph::new(costs, &edges, Some(points))?;
        let label = format!("udg-n{n}-side{side}-m{m}-s{seed}");
        return Ok(Instance::new(graph, m, label)?);
    }
    Err(GenError::DisconnectedUdg(UDG_RETRY_BUDGET))
}

/// The adversarial family on which pair-at-a-time connection costs about
/// `d` times the optimum, together with named node ids.
#[derive(Debug, Clone)]
pub struct Fig1 {
    pub instance: Instance,
    /// Pre-dominating set: the top node and the bottom nodes.
    pub designated: Vec<NodeId>,
    pub top: NodeId,
    /// Center `u`, cost `1 + eps`.
    pub hub: NodeId,
    /// `u_1..u_d`, cost 1 each.
    pub upper: Vec<NodeId>,
    /// `v_1..v_d`, cost `eps` each.
    pub lower: Vec<NodeId>,
    /// `b_1..b_d`, cost 1 each.
    pub bottom: Vec<NodeId>,
}

/// Builds the family with `3d + 2` nodes.
///
/// Node layout: `t = 0`, `u = 1`, `u_i = 1 + i`, `v_i = 1 + d + i`,
/// `b_i = 1 + 2d + i` for `i` in `1..=d`. Edges: `t-u`, `t-u_i`, `u_i-v_i`,
/// `v_i-u`, `v_i-b_i`.
pub fn gen_fig1(d: usize, eps: f64, m: usize) -> Result<Fig1, GenError> {
    if d == 0 {
        return Err(GenError::Param("d must be at least 1".into()));
    }
    if !(eps.is_finite() && eps > 0.0) {
        return Err(GenError::Param(format!("eps {eps} must be positive")));
    }
    let top = 0;
    let hub = 1;
    let upper: Vec<NodeId> = (0..d).map(|i| 2 + i).collect();
    let lower: Vec<NodeId> = (0..d).map(|i| 2 + d + i).collect();
    let bottom: Vec<NodeId> = (0..d).map(|i| 2 + 2 * d + i).collect();
    let n = 3 * d + 2;

    let mut costs = vec![1.0; n];
    costs[hub] = 1.0 + eps;
    for &v in &lower {
        costs[v] = eps;
    }
    let mut edges = vec![(top, hub)];
    for i in 0..d {
        edges.push((top, upper[i]));
        edges.push((upper[i], lower[i]));
        edges.push((hub, lower[i]));
        edges.push((lower[i], bottom[i]));
    }
    let graph = WeightedGraph::new(costs, &edges, None)?;
    let instance = Instance::new(graph, m, format!("fig1-d{d}-eps{eps}"))?;
    let mut designated = vec![top];
    designated.extend(&bottom);
    Ok(Fig1 {
        instance,
        designated,
        top,
        hub,
        upper,
        lower,
        bottom,
    })
}
