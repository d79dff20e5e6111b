//! Exact minimum-cost solutions for small instances.
//!
//! Depth-first include/exclude search over nodes in decreasing-degree
//! order. A branch is cut when its accumulated cost reaches the incumbent,
//! or when an excluded node can no longer collect `m` neighbors from the
//! included and still-undecided nodes.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{induced_components, Instance, NodeId};

pub const DEFAULT_NODE_BUDGET: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub opt_set: Vec<NodeId>,
    pub opt_cost: f64,
    pub nodes_explored: u64,
    /// True iff the search ran to completion.
    pub exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for oracle: {n} nodes exceeds budget {budget}")]
    TooLarge { n: usize, budget: usize },
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Decision {
    Open,
    In,
    Out,
}

struct Search<'a> {
    inst: &'a Instance,
    connected: bool,
    order: Vec<NodeId>,
    decision: Vec<Decision>,
    included_nbrs: Vec<usize>,
    open_nbrs: Vec<usize>,
    best_cost: f64,
    best_mask: Vec<bool>,
    explored: u64,
}

impl<'a> Search<'a> {
    fn new(inst: &'a Instance, connected: bool) -> Self {
        let g = &inst.graph;
        let n = g.node_count();
        let mut order: Vec<NodeId> = (0..n).collect();
        order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
        Search {
            inst,
            connected,
            order,
            decision: vec![Decision::Open; n],
            included_nbrs: vec![0; n],
            open_nbrs: (0..n).map(|u| g.degree(u)).collect(),
            // V itself is always feasible on a connected graph
            best_cost: g.costs().iter().sum(),
            best_mask: vec![true; n],
            explored: 0,
        }
    }

    fn can_still_dominate(&self, u: NodeId) -> bool {
        self.included_nbrs[u] + self.open_nbrs[u] >= self.inst.m()
    }

    fn set(&mut self, u: NodeId, d: Decision) {
        self.decision[u] = d;
        for &v in self.inst.graph.neighbors(u) {
            self.open_nbrs[v] -= 1;
            if d == Decision::In {
                self.included_nbrs[v] += 1;
            }
        }
    }

    fn unset(&mut self, u: NodeId) {
        let d = self.decision[u];
        self.decision[u] = Decision::Open;
        for &v in self.inst.graph.neighbors(u) {
            self.open_nbrs[v] += 1;
            if d == Decision::In {
                self.included_nbrs[v] -= 1;
            }
        }
    }

    fn exclusion_feasible(&self, u: NodeId) -> bool {
        self.can_still_dominate(u)
            && self
                .inst
                .graph
                .neighbors(u)
                .iter()
                .all(|&v| self.decision[v] != Decision::Out || self.can_still_dominate(v))
    }

    fn leaf(&mut self, cost: f64) {
        let mask: Vec<bool> = self.decision.iter().map(|&d| d == Decision::In).collect();
        if self.connected {
            let (_, count) = induced_components(&self.inst.graph, &mask);
            if count != 1 {
                return;
            }
        }
        if cost < self.best_cost {
            self.best_cost = cost;
            self.best_mask = mask;
        }
    }

    fn run(&mut self, depth: usize, cost: f64) {
        self.explored += 1;
        if cost >= self.best_cost {
            return;
        }
        if depth == self.order.len() {
            self.leaf(cost);
            return;
        }
        let u = self.order[depth];
        let c = self.inst.graph.cost(u);

        self.set(u, Decision::In);
        self.run(depth + 1, cost + c);
        self.unset(u);

        self.set(u, Decision::Out);
        if self.exclusion_feasible(u) {
            self.run(depth + 1, cost);
        }
        self.unset(u);
    }

    fn finish(self) -> OracleResult {
        let opt_set: Vec<NodeId> = (0..self.best_mask.len())
            .filter(|&u| self.best_mask[u])
            .collect();
        OracleResult {
            opt_cost: self.inst.graph.set_cost(&opt_set),
            opt_set,
            nodes_explored: self.explored,
            exhausted: true,
        }
    }
}

fn solve(
    inst: &Instance,
    node_budget: usize,
    connected: bool,
) -> Result<OracleResult, OracleError> {
    if inst.n() > node_budget {
        return Err(OracleError::TooLarge {
            n: inst.n(),
            budget: node_budget,
        });
    }
    let mut search = Search::new(inst, connected);
    search.run(0, 0.0);
    Ok(search.finish())
}

/// Minimum-cost connected m-fold dominating set.
pub fn exact_opt_cds(inst: &Instance, node_budget: usize) -> Result<OracleResult, OracleError> {
    solve(inst, node_budget, true)
}

/// Minimum-cost m-fold dominating set, connectivity not required.
pub fn exact_opt_mds(inst: &Instance, node_budget: usize) -> Result<OracleResult, OracleError> {
    solve(inst, node_budget, false)
}
