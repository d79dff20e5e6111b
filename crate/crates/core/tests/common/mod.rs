//! Brute-force reference computations shared by the integration tests.
//!
//! Nothing here calls into the solver's incremental structures; every
//! quantity is recomputed from the raw adjacency.

#![allow(dead_code)]

use cds_core::{gen_random_connected, Instance, NodeId, WeightedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Number of connected components of `G[mask]` by iterative DFS.
pub fn count_components(g: &WeightedGraph, mask: &[bool]) -> usize {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if !mask[s] || seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if mask[v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
    }
    count
}

pub fn mask(n: usize, nodes: &[NodeId]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &u in nodes {
        m[u] = true;
    }
    m
}

/// `q(C)` straight from its definition.
pub fn brute_q(inst: &Instance, set: &[NodeId]) -> i64 {
    let g = &inst.graph;
    let m = inst.m() as i64;
    let inside = mask(g.node_count(), set);
    let mut residual = 0;
    for u in 0..g.node_count() {
        if inside[u] {
            continue;
        }
        let k = g.neighbors(u).iter().filter(|&&v| inside[v]).count() as i64;
        residual += (m - k).max(0);
    }
    m * g.node_count() as i64 - residual
}

/// Leaves in `(cost, id)` order.
pub fn cost_sorted(g: &WeightedGraph, leaves: &[NodeId]) -> Vec<NodeId> {
    let mut v = leaves.to_vec();
    v.sort_by(|&a, &b| g.cost(a).partial_cmp(&g.cost(b)).unwrap().then(a.cmp(&b)));
    v
}

/// Capped potential of a star by simulating insertions and recounting
/// components of the induced subgraph after every prefix.
pub fn brute_p_prime(g: &WeightedGraph, set: &[NodeId], center: NodeId, leaves: &[NodeId]) -> i64 {
    let mut m = mask(g.node_count(), set);
    let mut prev = count_components(g, &m) as i64;
    m[center] = true;
    let mut cur = count_components(g, &m) as i64;
    let mut value = prev - cur;
    for leaf in cost_sorted(g, leaves) {
        prev = cur;
        m[leaf] = true;
        cur = count_components(g, &m) as i64;
        value += (prev - cur).min(1);
    }
    value
}

/// Best `(p′, cost)` over every star centered at `u`: all subsets of the
/// center's free neighbors. `None` if no star has positive potential.
pub fn brute_best_star_at(g: &WeightedGraph, set: &[NodeId], u: NodeId) -> Option<(i64, f64)> {
    let inside = mask(g.node_count(), set);
    let free: Vec<NodeId> = g
        .neighbors(u)
        .iter()
        .copied()
        .filter(|&v| !inside[v])
        .collect();
    let mut best: Option<(i64, f64)> = None;
    for bits in 0u32..(1u32 << free.len()) {
        let leaves: Vec<NodeId> = (0..free.len())
            .filter(|&i| bits >> i & 1 == 1)
            .map(|i| free[i])
            .collect();
        let p = brute_p_prime(g, set, u, &leaves);
        if p <= 0 {
            continue;
        }
        let ordered = cost_sorted(g, &leaves);
        let cost = g.cost(u) + ordered.iter().map(|&v| g.cost(v)).sum::<f64>();
        let better = match best {
            None => true,
            Some((bp, bc)) => (p as f64) * bc > (bp as f64) * cost,
        };
        if better {
            best = Some((p, cost));
        }
    }
    best
}

pub fn efficiency(best: Option<(i64, f64)>) -> f64 {
    best.map_or(0.0, |(p, c)| p as f64 / c)
}

/// Relative float equality.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

pub fn is_m_dominating(inst: &Instance, inside: &[bool]) -> bool {
    let g = &inst.graph;
    (0..g.node_count())
        .all(|u| inside[u] || g.neighbors(u).iter().filter(|&&v| inside[v]).count() >= inst.m())
}

/// Minimum cost over all `2^n` subsets, no pruning.
pub fn enumerate_opt(inst: &Instance, connected: bool) -> f64 {
    let g = &inst.graph;
    let n = g.node_count();
    assert!(n <= 20);
    let mut best = f64::INFINITY;
    for bits in 1u32..(1u32 << n) {
        let inside: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        if !is_m_dominating(inst, &inside) {
            continue;
        }
        if connected && count_components(g, &inside) != 1 {
            continue;
        }
        let cost: f64 = (0..n).filter(|&i| inside[i]).map(|i| g.cost(i)).sum();
        best = best.min(cost);
    }
    best
}

/// Random dominating set: each node kept with probability `keep`, then
/// undominated nodes are added in id order.
pub fn random_dominating_set(g: &WeightedGraph, keep: f64, rng: &mut ChaCha8Rng) -> Vec<NodeId> {
    let n = g.node_count();
    let mut inside: Vec<bool> = (0..n).map(|_| rng.gen_bool(keep)).collect();
    for u in 0..n {
        if !inside[u] && !g.neighbors(u).iter().any(|&v| inside[v]) {
            inside[u] = true;
        }
    }
    (0..n).filter(|&u| inside[u]).collect()
}

/// True when some single node or adjacent pair outside `set` lowers the
/// component count of `G[set]`.
pub fn short_connector_exists(g: &WeightedGraph, set: &[NodeId]) -> bool {
    let base = mask(g.node_count(), set);
    let p = count_components(g, &base);
    for a in 0..g.node_count() {
        if base[a] {
            continue;
        }
        let mut m = base.clone();
        m[a] = true;
        if count_components(g, &m) < p {
            return true;
        }
        for &b in g.neighbors(a) {
            if base[b] {
                continue;
            }
            let mut m2 = m.clone();
            m2[b] = true;
            if count_components(g, &m2) < p {
                return true;
            }
        }
    }
    false
}

/// The random corpus used by the ratio checks: `count` instances with
/// `n` in `4..=12`, edge probability in `[0.15, 0.6]`, `m` cycling through
/// 1, 2, 3 and costs in `[0.1, 10]`.
pub fn random_corpus(count: usize, seed: u64) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let n = r.gen_range(4..=12);
            let p = r.gen_range(0.15..=0.6);
            let m = 1 + i % 3;
            gen_random_connected(n, p, (0.1, 10.0), m, r.gen()).unwrap()
        })
        .collect()
}
