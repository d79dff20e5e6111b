//! Greedy m-fold domination.
//!
//! The potential `q(C) = m·n − Σ_u q_C(u)` counts how much of the total
//! domination requirement a set `C` satisfies, where the residual deficit
//! of a node outside `C` is `max(m − |N_C(u)|, 0)` and zero inside `C`.
//! `q` is monotone and submodular, so repeatedly adding the node with the
//! best gain per unit cost is a submodular-cover greedy.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Instance, NodeId, WeightedGraph};
use crate::ratio::cmp_ratio;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominationError {
    #[error("node {0} is already in the set")]
    AlreadyInSet(NodeId),
}

/// Incremental deficit bookkeeping for a growing node set `C`.
#[derive(Debug, Clone)]
pub struct DeficitState {
    m: usize,
    in_set: Vec<bool>,
    neighbors_in_set: Vec<usize>,
    deficit: Vec<usize>,
    q_total: usize,
}

impl DeficitState {
    /// State for `C = ∅`: every node has deficit `m`.
    pub fn new(graph: &WeightedGraph, m: usize) -> Self {
        let n = graph.node_count();
        DeficitState {
            m,
            in_set: vec![false; n],
            neighbors_in_set: vec![0; n],
            deficit: vec![m; n],
            q_total: 0,
        }
    }

    /// State for an arbitrary starting set.
    pub fn with_set(graph: &WeightedGraph, m: usize, set: &[NodeId]) -> Self {
        let mut state = Self::new(graph, m);
        for &u in set {
            if !state.in_set[u] {
                state.insert(graph, u);
            }
        }
        state
    }

    pub fn contains(&self, u: NodeId) -> bool {
        self.in_set[u]
    }

    pub fn deficit(&self, u: NodeId) -> usize {
        self.deficit[u]
    }

    pub fn neighbors_in_set(&self, u: NodeId) -> usize {
        self.neighbors_in_set[u]
    }

    /// Current value of `q(C)`.
    pub fn q_total(&self) -> usize {
        self.q_total
    }

    /// True once every node outside `C` has at least `m` neighbors in `C`.
    pub fn is_complete(&self) -> bool {
        self.q_total == self.m * self.in_set.len()
    }

    /// `Δ_u q(C)`: the node's own deficit plus one for every deficient
    /// neighbor outside `C`.
    pub fn marginal_gain(
        &self,
        graph: &WeightedGraph,
        u: NodeId,
    ) -> Result<usize, DominationError> {
        if self.in_set[u] {
            return Err(DominationError::AlreadyInSet(u));
        }
        let covered = graph
            .neighbors(u)
            .iter()
            .filter(|&&v| !self.in_set[v] && self.deficit[v] > 0)
            .count();
        Ok(self.deficit[u] + covered)
    }

    /// Adds `u` to `C` and returns the realized gain.
    pub fn insert(&mut self, graph: &WeightedGraph, u: NodeId) -> usize {
        debug_assert!(!self.in_set[u]);
        let mut gain = self.deficit[u];
        self.in_set[u] = true;
        self.deficit[u] = 0;
        for &v in graph.neighbors(u) {
            self.neighbors_in_set[v] += 1;
            if !self.in_set[v] && self.deficit[v] > 0 {
                self.deficit[v] -= 1;
                gain += 1;
            }
        }
        self.q_total += gain;
        gain
    }

    pub fn members(&self) -> Vec<NodeId> {
        (0..self.in_set.len()).filter(|&u| self.in_set[u]).collect()
    }
}

/// `Δ_u q(C)` for the state's current set.
pub fn marginal_gain_q(
    graph: &WeightedGraph,
    state: &DeficitState,
    u: NodeId,
) -> Result<usize, DominationError> {
    state.marginal_gain(graph, u)
}

/// From-scratch evaluation of `q(C)`.
pub fn q_value(inst: &Instance, set: &[NodeId]) -> usize {
    let g = &inst.graph;
    let m = inst.m();
    let mut in_set = vec![false; g.node_count()];
    for &u in set {
        in_set[u] = true;
    }
    let residual: usize = (0..g.node_count())
        .filter(|&u| !in_set[u])
        .map(|u| {
            let inside = g.neighbors(u).iter().filter(|&&v| in_set[v]).count();
            m.saturating_sub(inside)
        })
        .sum();
    m * g.node_count() - residual
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyStep {
    pub node: NodeId,
    pub gain: usize,
    /// `gain / cost` of the chosen node.
    pub ratio: f64,
    pub running_cost: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
}

/// Result of the domination phase.
#[derive(Debug, Clone)]
pub struct Phase1 {
    /// Chosen nodes in selection order.
    pub set: Vec<NodeId>,
    pub trace: GreedyTrace,
}

impl Phase1 {
    pub fn sorted(&self) -> Vec<NodeId> {
        let mut s = self.set.clone();
        s.sort_unstable();
        s
    }
}

/// Orders candidates `(gain, cost, id)`: better ratio first, then larger
/// gain, then smaller id. Returns `Greater` when `a` is preferred.
fn prefer(a: (usize, f64, NodeId), b: (usize, f64, NodeId)) -> Ordering {
    cmp_ratio(a.0 as f64, a.1, b.0 as f64, b.1)
        .then(a.0.cmp(&b.0))
        .then(b.2.cmp(&a.2))
}

/// Runs the greedy until no node has positive gain. The returned set is an
/// m-fold dominating set.
pub fn run_phase1(inst: &Instance) -> Phase1 {
    let g = &inst.graph;
    let mut state = DeficitState::new(g, inst.m());
    let mut trace = GreedyTrace::default();
    let mut set = Vec::new();
    let mut running_cost = 0.0;
    loop {
        let mut best: Option<(usize, f64, NodeId)> = None;
        for u in 0..g.node_count() {
            if state.contains(u) {
                continue;
            }
            let gain = state.marginal_gain(g, u).expect("u outside the set");
            if gain == 0 {
                continue;
            }
            let cand = (gain, g.cost(u), u);
            if best.is_none_or(|b| prefer(cand, b) == Ordering::Greater) {
                best = Some(cand);
            }
        }
        let Some((gain, cost, u)) = best else { break };
        let realized = state.insert(g, u);
        debug_assert_eq!(realized, gain);
        running_cost += cost;
        set.push(u);
        trace.steps.push(GreedyStep {
            node: u,
            gain,
            ratio: gain as f64 / cost,
            running_cost,
        });
    }
    debug_assert!(state.is_complete());
    Phase1 { set, trace }
}
