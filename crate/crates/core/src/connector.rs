//! Connecting an m-fold dominating set with greedily chosen stars.
//!
//! A star `S_u` is a center `u` plus some of its neighbors `u_1..u_s`,
//! listed by nondecreasing cost. Its potential with respect to the current
//! set `D` is
//!
//! ```text
//! p′_D(S_u) = |NC_D(u)| − 1 + Σ_i min{1, |NC_D(u_i) ∖ NC_D(u, u_1, …, u_{i−1})|}
//! ```
//!
//! where `NC_D(X)` is the set of components of `G[D]` adjacent to `X`. Each
//! round adds the star maximizing `p′ / cost` until `G[D]` is connected.
//!
//! The best star at a fixed center only needs leaves that touch exactly one
//! component, one cheapest leaf per component not already adjacent to the
//! center, taken as a cost-ordered prefix. Some globally most efficient star
//! always has that shape, so scanning every center finds the global optimum
//! in polynomial time.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::components::ComponentIndex;
use crate::graph::{Instance, NodeId, WeightedGraph};
use crate::ratio::cmp_ratio;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectError {
    #[error("node {0} is already in the set")]
    InSet(NodeId),
    #[error("leaf {leaf} is not adjacent to center {center}")]
    NotAdjacent { center: NodeId, leaf: NodeId },
    #[error("leaf {0} listed twice")]
    DuplicateLeaf(NodeId),
    #[error("node {0} has no neighbor in the set")]
    Undominated(NodeId),
    #[error("input set is not a dominating set: node {0} has no neighbor in it")]
    NotDominating(NodeId),
    #[error("no star reduces the component count ({0} components remain)")]
    NoProgress(usize),
}

/// A star with its potential and cost relative to some set `D`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarCandidate {
    pub center: NodeId,
    /// Leaves by nondecreasing `(cost, id)`.
    pub leaves: Vec<NodeId>,
    pub p_prime: usize,
    pub total_cost: f64,
}

impl StarCandidate {
    pub fn nodes(&self) -> Vec<NodeId> {
        let mut v = Vec::with_capacity(1 + self.leaves.len());
        v.push(self.center);
        v.extend(&self.leaves);
        v
    }

    pub fn efficiency(&self) -> f64 {
        self.p_prime as f64 / self.total_cost
    }
}

/// Greedy preference between stars: higher efficiency, then larger `p′`,
/// then smaller center id, then fewer leaves, then lexicographically
/// smaller leaves. `Greater` means `a` wins.
pub fn prefer_star(a: &StarCandidate, b: &StarCandidate) -> Ordering {
    cmp_ratio(
        a.p_prime as f64,
        a.total_cost,
        b.p_prime as f64,
        b.total_cost,
    )
    .then(a.p_prime.cmp(&b.p_prime))
    .then(b.center.cmp(&a.center))
    .then(b.leaves.len().cmp(&a.leaves.len()))
    .then(b.leaves.cmp(&a.leaves))
}

fn by_cost(graph: &WeightedGraph) -> impl Fn(&NodeId, &NodeId) -> Ordering + '_ {
    |&a, &b| graph.cost(a).total_cmp(&graph.cost(b)).then(a.cmp(&b))
}

/// `NC_D(u)`: component ids of `G[D]` adjacent to `u`.
pub fn component_neighbors(
    idx: &ComponentIndex,
    graph: &WeightedGraph,
    u: NodeId,
) -> Result<Vec<usize>, ConnectError> {
    if idx.contains(u) {
        return Err(ConnectError::InSet(u));
    }
    Ok(idx.neighbor_components(graph, u))
}

/// Evaluates `p′_D(S_u)` for the star with the given center and leaves.
///
/// Leaves are taken in `(cost, id)` order regardless of input order.
pub fn p_prime(
    idx: &ComponentIndex,
    graph: &WeightedGraph,
    center: NodeId,
    leaves: &[NodeId],
) -> Result<usize, ConnectError> {
    let mut covered = component_neighbors(idx, graph, center)?;
    if covered.is_empty() {
        return Err(ConnectError::Undominated(center));
    }
    let mut order = leaves.to_vec();
    order.sort_by(by_cost(graph));
    if let Some(w) = order.windows(2).find(|w| w[0] == w[1]) {
        return Err(ConnectError::DuplicateLeaf(w[0]));
    }
    let mut value = covered.len() - 1;
    for &leaf in &order {
        if idx.contains(leaf) {
            return Err(ConnectError::InSet(leaf));
        }
        if !graph.has_edge(center, leaf) {
            return Err(ConnectError::NotAdjacent { center, leaf });
        }
        let mut merged_new = false;
        for c in idx.neighbor_components(graph, leaf) {
            if let Err(pos) = covered.binary_search(&c) {
                covered.insert(pos, c);
                merged_new = true;
            }
        }
        value += usize::from(merged_new);
    }
    Ok(value)
}

/// Most efficient star centered at `u`, or `None` when no star there has
/// positive potential. `D` must dominate `u`.
pub fn best_star_at(
    idx: &ComponentIndex,
    graph: &WeightedGraph,
    u: NodeId,
) -> Result<Option<StarCandidate>, ConnectError> {
    let mut covered = component_neighbors(idx, graph, u)?;
    if covered.is_empty() {
        return Err(ConnectError::Undominated(u));
    }
    let base = covered.len() - 1;

    // leaves touching exactly one component
    let mut eligible: Vec<(NodeId, usize)> = graph
        .neighbors(u)
        .iter()
        .filter(|&&v| !idx.contains(v))
        .filter_map(|&v| match idx.neighbor_components(graph, v).as_slice() {
            [c] => Some((v, *c)),
            _ => None,
        })
        .collect();
    eligible.sort_by(|a, b| by_cost(graph)(&a.0, &b.0));

    let mut kept = Vec::new();
    for (v, c) in eligible {
        if let Err(pos) = covered.binary_search(&c) {
            covered.insert(pos, c);
            kept.push(v);
        }
    }

    let mut best: Option<(usize, f64, usize)> = None;
    let mut cost = graph.cost(u);
    for len in 0..=kept.len() {
        if len > 0 {
            cost += graph.cost(kept[len - 1]);
        }
        let p = base + len;
        if p == 0 {
            continue;
        }
        let better = match best {
            None => true,
            Some((bp, bc, _)) => {
                cmp_ratio(p as f64, cost, bp as f64, bc).then(p.cmp(&bp)) == Ordering::Greater
            }
        };
        if better {
            best = Some((p, cost, len));
        }
    }
    Ok(best.map(|(p_prime, total_cost, len)| StarCandidate {
        center: u,
        leaves: kept[..len].to_vec(),
        p_prime,
        total_cost,
    }))
}

/// Most efficient star over every center outside `D`.
pub fn best_star(
    idx: &ComponentIndex,
    graph: &WeightedGraph,
) -> Result<Option<StarCandidate>, ConnectError> {
    let mut best: Option<StarCandidate> = None;
    for u in 0..graph.node_count() {
        if idx.contains(u) {
            continue;
        }
        if let Some(cand) = best_star_at(idx, graph, u)? {
            if best
                .as_ref()
                .is_none_or(|b| prefer_star(&cand, b) == Ordering::Greater)
            {
                best = Some(cand);
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChosenStar {
    pub star: StarCandidate,
    pub components_before: usize,
    pub components_after: usize,
}

impl ChosenStar {
    /// Measured `−Δ_S p(D)`.
    pub fn reduction(&self) -> usize {
        self.components_before - self.components_after
    }

    /// `c(S) / p′(S)`.
    pub fn cost_per_unit(&self) -> f64 {
        self.star.total_cost / self.star.p_prime as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectReport {
    pub steps: Vec<ChosenStar>,
    /// Connector nodes in selection order.
    pub d2: Vec<NodeId>,
    /// `p(D1)` before the first step.
    pub initial_components: usize,
    /// `p(D)` after each step.
    pub component_trace: Vec<usize>,
}

impl ConnectReport {
    pub fn sorted_d2(&self) -> Vec<NodeId> {
        let mut s = self.d2.clone();
        s.sort_unstable();
        s
    }

    pub fn cost(&self, graph: &WeightedGraph) -> f64 {
        graph.set_cost(&self.d2)
    }
}

fn check_dominating(graph: &WeightedGraph, idx: &ComponentIndex) -> Result<(), ConnectError> {
    for u in 0..graph.node_count() {
        if !idx.contains(u) && !graph.neighbors(u).iter().any(|&v| idx.contains(v)) {
            return Err(ConnectError::NotDominating(u));
        }
    }
    Ok(())
}

fn connect_with<F>(
    inst: &Instance,
    d1: &[NodeId],
    mut pick: F,
) -> Result<ConnectReport, ConnectError>
where
    F: FnMut(&ComponentIndex, &WeightedGraph) -> Result<Option<StarCandidate>, ConnectError>,
{
    let g = &inst.graph;
    let mut idx = ComponentIndex::from_set(g, d1);
    check_dominating(g, &idx)?;
    let initial_components = idx.component_count();
    let mut steps = Vec::new();
    let mut d2 = Vec::new();
    let mut component_trace = Vec::new();
    while idx.component_count() > 1 {
        let star = pick(&idx, g)?.ok_or(ConnectError::NoProgress(idx.component_count()))?;
        let before = idx.component_count();
        let nodes = star.nodes();
        idx.insert_all(g, &nodes);
        let after = idx.component_count();
        d2.extend(nodes);
        component_trace.push(after);
        steps.push(ChosenStar {
            star,
            components_before: before,
            components_after: after,
        });
    }
    Ok(ConnectReport {
        steps,
        d2,
        initial_components,
        component_trace,
    })
}

/// Star-greedy connection of the dominating set `d1`.
pub fn run_phase2(inst: &Instance, d1: &[NodeId]) -> Result<ConnectReport, ConnectError> {
    connect_with(inst, d1, best_star)
}

fn best_pair_or_single(
    idx: &ComponentIndex,
    graph: &WeightedGraph,
) -> Result<Option<StarCandidate>, ConnectError> {
    let mut best: Option<StarCandidate> = None;
    let mut offer = |cand: StarCandidate| {
        if cand.p_prime == 0 {
            return;
        }
        if best
            .as_ref()
            .is_none_or(|b| prefer_star(&cand, b) == Ordering::Greater)
        {
            best = Some(cand);
        }
    };
    for a in 0..graph.node_count() {
        if idx.contains(a) {
            continue;
        }
        let nc_a = idx.neighbor_components(graph, a);
        if nc_a.is_empty() {
            return Err(ConnectError::Undominated(a));
        }
        offer(StarCandidate {
            center: a,
            leaves: vec![],
            p_prime: nc_a.len() - 1,
            total_cost: graph.cost(a),
        });
        for &b in graph.neighbors(a) {
            if b < a || idx.contains(b) {
                continue;
            }
            let mut union = nc_a.clone();
            union.extend(idx.neighbor_components(graph, b));
            union.sort_unstable();
            union.dedup();
            offer(StarCandidate {
                center: a,
                leaves: vec![b],
                p_prime: union.len() - 1,
                total_cost: graph.cost(a) + graph.cost(b),
            });
        }
    }
    Ok(best)
}

/// Baseline connector: each round adds the single node or adjacent pair
/// with the best component reduction per unit cost. For these candidates
/// `p_prime` holds the exact reduction.
pub fn run_pairwise_baseline(
    inst: &Instance,
    d1: &[NodeId],
) -> Result<ConnectReport, ConnectError> {
    connect_with(inst, d1, best_pair_or_single)
}
