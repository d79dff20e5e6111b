//! Feasibility checks for candidate solutions.

use serde::Serialize;

use crate::graph::{induced_components, mask_of, Instance, NodeId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub node: Option<NodeId>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub is_m_ds: bool,
    /// Unset for domination-only checks.
    pub is_connected: Option<bool>,
    pub is_cds: Option<bool>,
    pub violations: Vec<Violation>,
    pub cost: f64,
}

impl VerifyReport {
    /// True when the report's checks all passed.
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn domination_violations(inst: &Instance, mask: &[bool]) -> Vec<Violation> {
    let g = &inst.graph;
    let m = inst.m();
    (0..g.node_count())
        .filter(|&u| !mask[u])
        .filter_map(|u| {
            let inside = g.neighbors(u).iter().filter(|&&v| mask[v]).count();
            (inside < m).then(|| Violation {
                node: Some(u),
                reason: format!("node {u} has {inside} < {m} dominators"),
            })
        })
        .collect()
}

/// Checks that every node outside `set` has at least `m` neighbors in it.
pub fn verify_mds(inst: &Instance, set: &[NodeId]) -> VerifyReport {
    let mask = mask_of(inst.n(), set);
    let violations = domination_violations(inst, &mask);
    VerifyReport {
        is_m_ds: violations.is_empty(),
        is_connected: None,
        is_cds: None,
        violations,
        cost: cost_of(inst, &mask),
    }
}

/// Checks m-fold domination plus connectivity of the induced subgraph.
pub fn verify_cds(inst: &Instance, set: &[NodeId]) -> VerifyReport {
    let mask = mask_of(inst.n(), set);
    let mut violations = domination_violations(inst, &mask);
    let is_m_ds = violations.is_empty();
    let (label, count) = induced_components(&inst.graph, &mask);
    let is_connected = count == 1;
    if count == 0 {
        violations.push(Violation {
            node: None,
            reason: "solution is empty".into(),
        });
    }
    // one entry per component beyond the first, keyed by its smallest node
    for c in 1..count {
        let u = label
            .iter()
            .position(|&l| l == Some(c))
            .expect("component has a member");
        violations.push(Violation {
            node: Some(u),
            reason: format!(
                "node {u} is not connected to the component of node {} in G[D]",
                first_member(&label)
            ),
        });
    }
    VerifyReport {
        is_m_ds,
        is_connected: Some(is_connected),
        is_cds: Some(is_m_ds && is_connected),
        violations,
        cost: cost_of(inst, &mask),
    }
}

fn first_member(label: &[Option<usize>]) -> usize {
    label.iter().position(|&l| l == Some(0)).unwrap_or(0)
}

fn cost_of(inst: &Instance, mask: &[bool]) -> f64 {
    (0..inst.n())
        .filter(|&u| mask[u])
        .map(|u| inst.graph.cost(u))
        .sum()
}
