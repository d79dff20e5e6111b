//! End-to-end solve: domination phase, connection phase, verification and
//! optional comparison against the exact optimum.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::connector::{run_pairwise_baseline, run_phase2, ConnectError, ConnectReport};
use crate::domination::{run_phase1, GreedyTrace};
use crate::graph::{Instance, NodeId};
use crate::oracle::{exact_opt_cds, exact_opt_mds, OracleError};
use crate::ratio::{ratio_report, RatioError, RatioRecord};
use crate::verify::{verify_cds, verify_mds, VerifyReport};

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connector {
    /// Star greedy on the capped potential.
    #[default]
    Star,
    /// Single nodes and adjacent pairs by exact component reduction.
    Pairwise,
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub connector: Connector,
    /// Skip the domination phase and connect this set instead.
    pub given_ds: Option<Vec<NodeId>>,
    /// Run the exact oracles with this node budget.
    pub oracle_budget: Option<usize>,
    pub timing: bool,
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("given set is not an m-fold dominating set: {0}")]
    GivenNotDominating(String),
    #[error(transparent)]
    Connect(#[from] ConnectError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Ratio(#[from] RatioError),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostBreakdown {
    pub d1: f64,
    pub d2: f64,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    pub phase1_ms: f64,
    pub phase2_ms: f64,
    pub oracle_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub schema: u32,
    pub label: String,
    pub n: usize,
    pub edges: usize,
    pub m: usize,
    pub delta: usize,
    pub connector: Connector,
    pub given_ds: bool,
    pub d1: Vec<NodeId>,
    pub d2: Vec<NodeId>,
    pub dg: Vec<NodeId>,
    pub cost: CostBreakdown,
    pub phase1_trace: GreedyTrace,
    pub phase2: ConnectReport,
    pub verification: VerifyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratios: Option<RatioRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl SolveReport {
    pub fn verified(&self) -> bool {
        self.verification.is_cds == Some(true)
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn sorted(v: &[NodeId]) -> Vec<NodeId> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

pub fn solve(inst: &Instance, opts: &SolveOptions) -> Result<SolveReport, SolveError> {
    let g = &inst.graph;

    let t1 = Instant::now();
    let (d1, phase1_trace) = match &opts.given_ds {
        Some(given) => {
            let check = verify_mds(inst, given);
            if !check.is_m_ds {
                return Err(SolveError::GivenNotDominating(
                    check.violations[0].reason.clone(),
                ));
            }
            (sorted(given), GreedyTrace::default())
        }
        None => {
            let p1 = run_phase1(inst);
            (p1.sorted(), p1.trace)
        }
    };
    let phase1_ms = ms(t1);

    let t2 = Instant::now();
    let phase2 = match opts.connector {
        Connector::Star => run_phase2(inst, &d1)?,
        Connector::Pairwise => run_pairwise_baseline(inst, &d1)?,
    };
    let phase2_ms = ms(t2);

    let d2 = phase2.sorted_d2();
    let mut dg: Vec<NodeId> = d1.iter().chain(&d2).copied().collect();
    dg.sort_unstable();
    let cost_d1 = g.set_cost(&d1);
    let cost_d2 = g.set_cost(&d2);
    let verification = verify_cds(inst, &dg);

    let mut oracle_ms = None;
    let ratios = match opts.oracle_budget {
        Some(budget) => {
            let t3 = Instant::now();
            let cds = exact_opt_cds(inst, budget)?;
            let mds = exact_opt_mds(inst, budget)?;
            oracle_ms = Some(ms(t3));
            Some(ratio_report(inst, &d1, &d2, &cds, &mds)?)
        }
        None => None,
    };

    Ok(SolveReport {
        schema: REPORT_SCHEMA,
        label: inst.label.clone(),
        n: inst.n(),
        edges: g.edge_count(),
        m: inst.m(),
        delta: g.max_degree(),
        connector: opts.connector,
        given_ds: opts.given_ds.is_some(),
        d1,
        d2,
        dg,
        cost: CostBreakdown {
            d1: cost_d1,
            d2: cost_d2,
            total: cost_d1 + cost_d2,
        },
        phase1_trace,
        phase2,
        verification,
        ratios,
        timings: opts.timing.then_some(Timings {
            phase1_ms,
            phase2_ms,
            oracle_ms,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{gen_fig1, gen_random_connected};

    #[test]
    fn p3_end_to_end() {
        let inst = crate::format::parse_instance("cds 3 2 1\n1 1 1\n0 1\n1 2\n").unwrap();
        let r = solve(&inst, &SolveOptions::default()).unwrap();
        assert_eq!(r.dg, vec![1]);
        assert_eq!(r.cost.total, 1.0);
        assert!(r.verified());
        assert!(r.timings.is_none());
    }

    #[test]
    fn given_set_skips_domination() {
        let f = gen_fig1(3, 0.01, 1).unwrap();
        let opts = SolveOptions {
            given_ds: Some(f.designated.clone()),
            ..Default::default()
        };
        let r = solve(&f.instance, &opts).unwrap();
        assert!(r.phase1_trace.steps.is_empty());
        assert!((r.cost.d2 - 1.04).abs() < 1e-12);
        assert!(r.verified());
        let bad = SolveOptions {
            given_ds: Some(vec![f.top]),
            ..Default::default()
        };
        assert!(matches!(
            solve(&f.instance, &bad),
            Err(SolveError::GivenNotDominating(_))
        ));
    }

    #[test]
    fn oracle_ratios_attached() {
        let inst = gen_random_connected(9, 0.3, (0.1, 10.0), 2, 4).unwrap();
        let opts = SolveOptions {
            oracle_budget: Some(16),
            ..Default::default()
        };
        let r = solve(&inst, &opts).unwrap();
        let ratios = r.ratios.unwrap();
        assert!(ratios.ratio_total >= 1.0 - 1e-12);
        assert!(ratios.violations().is_empty());
        assert_eq!(r.cost.total, r.cost.d1 + r.cost.d2);
    }
}
