//! Ratio comparison, harmonic numbers and approximation bounds.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Instance, NodeId};
use crate::oracle::OracleResult;

/// Relative slack allowed when checking `cost <= bound * opt` in floating
/// point. Only absorbs rounding in the products; never a calibration knob.
pub const BOUND_REL_TOL: f64 = 1e-12;

/// Compares `gain_a / cost_a` with `gain_b / cost_b` by cross-multiplication.
/// Costs must be positive.
pub fn cmp_ratio(gain_a: f64, cost_a: f64, gain_b: f64, cost_b: f64) -> Ordering {
    (gain_a * cost_b)
        .partial_cmp(&(gain_b * cost_a))
        .expect("finite gains and costs")
}

/// `H(k) = Σ_{i=1..k} 1/i`, with `H(0) = 0`.
pub fn harmonic(k: usize) -> f64 {
    (1..=k).map(|i| 1.0 / i as f64).sum()
}

/// Domination-phase bound `H(δ + m)`.
pub fn phase1_bound(max_degree: usize, m: usize) -> f64 {
    harmonic(max_degree + m)
}

/// Connector bound `2·H(δ − 1)`.
pub fn connector_bound(max_degree: usize) -> f64 {
    2.0 * harmonic(max_degree.saturating_sub(1))
}

/// Overall bound `H(δ + m) + 2·H(δ − 1)`.
pub fn total_bound(max_degree: usize, m: usize) -> f64 {
    phase1_bound(max_degree, m) + connector_bound(max_degree)
}

/// Connector bound on unit disk graphs, `2·H(3) = 11/3`.
pub fn udg_connector_bound() -> f64 {
    2.0 * harmonic(3)
}

/// True when `value <= factor * reference` up to [`BOUND_REL_TOL`].
pub fn within_bound(value: f64, factor: f64, reference: f64) -> bool {
    value <= factor * reference * (1.0 + BOUND_REL_TOL)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RatioError {
    #[error("oracle search did not finish")]
    OracleIncomplete,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioRecord {
    pub opt: f64,
    pub opt_mds: f64,
    pub cost_d1: f64,
    pub cost_d2: f64,
    pub cost_total: f64,
    /// `c(D1) / opt′`
    pub ratio_d1: f64,
    /// `c(D2) / opt`
    pub ratio_d2: f64,
    /// `c(D_G) / opt`
    pub ratio_total: f64,
    pub bound_phase1: f64,
    pub bound_connector: f64,
    pub bound_total: f64,
    pub bound_udg_connector: Option<f64>,
}

impl RatioRecord {
    /// Names of the bounds this record violates.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !within_bound(self.cost_d1, self.bound_phase1, self.opt_mds) {
            out.push("phase1_bound");
        }
        if !within_bound(self.cost_d2, self.bound_connector, self.opt) {
            out.push("connector_bound");
        }
        if !within_bound(self.cost_total, self.bound_total, self.opt) {
            out.push("total_bound");
        }
        if let Some(b) = self.bound_udg_connector {
            if !within_bound(self.cost_d2, b, self.opt) {
                out.push("udg_connector_bound");
            }
        }
        if self.cost_total < self.opt * (1.0 - BOUND_REL_TOL) {
            out.push("below_optimum");
        }
        out
    }
}

/// Compares a two-phase solution against exact optima.
pub fn ratio_report(
    inst: &Instance,
    d1: &[NodeId],
    d2: &[NodeId],
    opt_cds: &OracleResult,
    opt_mds: &OracleResult,
) -> Result<RatioRecord, RatioError> {
    if !opt_cds.exhausted || !opt_mds.exhausted {
        return Err(RatioError::OracleIncomplete);
    }
    let g = &inst.graph;
    let delta = g.max_degree();
    let m = inst.m();
    let cost_d1 = g.set_cost(d1);
    let cost_d2 = g.set_cost(d2);
    let cost_total = cost_d1 + cost_d2;
    let (opt, opt_mds) = (opt_cds.opt_cost, opt_mds.opt_cost);
    Ok(RatioRecord {
        opt,
        opt_mds,
        cost_d1,
        cost_d2,
        cost_total,
        ratio_d1: cost_d1 / opt_mds,
        ratio_d2: cost_d2 / opt,
        ratio_total: cost_total / opt,
        bound_phase1: phase1_bound(delta, m),
        bound_connector: connector_bound(delta),
        bound_total: total_bound(delta, m),
        bound_udg_connector: g.is_udg().then(udg_connector_bound),
    })
}
