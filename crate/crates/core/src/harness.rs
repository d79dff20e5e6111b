//! Batch benchmarking: expand a batch description into instances, solve
//! them on a worker pool and check every row against the proven bounds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generate::{gen_fig1, gen_random_connected, gen_udg, GenError};
use crate::graph::Instance;
use crate::oracle::DEFAULT_NODE_BUDGET;
use crate::ratio::total_bound;
use crate::solve::{solve, Connector, SolveOptions};

/// Column order of the CSV output.
pub const CSV_COLUMNS: [&str; 14] = [
    "label",
    "n",
    "edges",
    "m",
    "delta",
    "cost_d1",
    "cost_d2",
    "cost_total",
    "opt",
    "opt_mds",
    "ratio_total",
    "bound_total",
    "udg",
    "violation",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Random,
    Udg,
    Fig1,
}

fn default_cost() -> (f64, f64) {
    (0.1, 10.0)
}
fn default_m() -> Vec<usize> {
    vec![1]
}
fn default_budget() -> usize {
    DEFAULT_NODE_BUDGET
}
fn default_eps() -> f64 {
    0.01
}

/// One generator configuration, crossed with every `m` and seed.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub kind: GenKind,
    /// Node counts (random, udg).
    #[serde(default)]
    pub n: Vec<usize>,
    /// Edge probability (random).
    pub p: Option<f64>,
    /// Square side length (udg).
    pub side: Option<f64>,
    /// Family sizes (fig1).
    #[serde(default)]
    pub d: Vec<usize>,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default = "default_cost")]
    pub cost: (f64, f64),
    #[serde(default = "default_m")]
    pub m: Vec<usize>,
    /// Inclusive seed range.
    #[serde(default)]
    pub seeds: (u64, u64),
    #[serde(default)]
    pub oracle: bool,
    #[serde(default = "default_budget")]
    pub oracle_budget: usize,
    #[serde(default)]
    pub connector: Connector,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchSpec {
    pub threads: Option<usize>,
    #[serde(default)]
    pub group: Vec<GroupSpec>,
}

#[derive(Debug, Error)]
pub enum BatchError {
    #[error("group {group}: {msg}")]
    Param { group: usize, msg: String },
    #[error("group {group}: {source}")]
    Gen { group: usize, source: GenError },
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

/// A fully materialized batch entry.
#[derive(Debug, Clone)]
pub struct Job {
    pub instance: Instance,
    pub oracle_budget: Option<usize>,
    pub connector: Connector,
}

pub fn expand(spec: &BatchSpec) -> Result<Vec<Job>, BatchError> {
    let mut jobs = Vec::new();
    for (gi, g) in spec.group.iter().enumerate() {
        let param = |msg: &str| BatchError::Param {
            group: gi,
            msg: msg.to_string(),
        };
        let gen = |source| BatchError::Gen { group: gi, source };
        if g.seeds.0 > g.seeds.1 {
            return Err(param("seed range start exceeds end"));
        }
        let mut push = |instance: Instance| {
            jobs.push(Job {
                instance,
                oracle_budget: g.oracle.then_some(g.oracle_budget),
                connector: g.connector,
            })
        };
        for &m in &g.m {
            match g.kind {
                GenKind::Random => {
                    let p = g.p.ok_or_else(|| param("random groups need `p`"))?;
                    for &n in &g.n {
                        for seed in g.seeds.0..=g.seeds.1 {
                            push(gen_random_connected(n, p, g.cost, m, seed).map_err(gen)?);
                        }
                    }
                }
                GenKind::Udg => {
                    let side = g.side.ok_or_else(|| param("udg groups need `side`"))?;
                    for &n in &g.n {
                        for seed in g.seeds.0..=g.seeds.1 {
                            push(gen_udg(n, side, g.cost, m, seed).map_err(gen)?);
                        }
                    }
                }
                GenKind::Fig1 => {
                    for &d in &g.d {
                        push(gen_fig1(d, g.eps, m).map_err(gen)?.instance);
                    }
                }
            }
        }
    }
    Ok(jobs)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub label: String,
    pub n: usize,
    pub edges: usize,
    pub m: usize,
    pub delta: usize,
    pub cost_d1: f64,
    pub cost_d2: f64,
    pub cost_total: f64,
    pub opt: Option<f64>,
    pub opt_mds: Option<f64>,
    pub ratio_total: Option<f64>,
    pub bound_total: f64,
    pub udg: bool,
    /// Empty when the row passed; otherwise `;`-separated failure names.
    pub violation: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_d1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_d2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl BenchRow {
    pub fn failed(&self) -> bool {
        !self.violation.is_empty()
    }

    /// Values in [`CSV_COLUMNS`] order.
    pub fn csv_record(&self) -> Vec<String> {
        let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        vec![
            self.label.clone(),
            self.n.to_string(),
            self.edges.to_string(),
            self.m.to_string(),
            self.delta.to_string(),
            self.cost_d1.to_string(),
            self.cost_d2.to_string(),
            self.cost_total.to_string(),
            opt(self.opt),
            opt(self.opt_mds),
            opt(self.ratio_total),
            self.bound_total.to_string(),
            self.udg.to_string(),
            self.violation.clone(),
        ]
    }
}

pub fn evaluate(job: &Job, timing: bool) -> BenchRow {
    let inst = &job.instance;
    let g = &inst.graph;
    let opts = SolveOptions {
        connector: job.connector,
        given_ds: None,
        oracle_budget: job.oracle_budget,
        timing,
    };
    let start = std::time::Instant::now();
    let result = solve(inst, &opts);
    let elapsed_ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let mut row = BenchRow {
        label: inst.label.clone(),
        n: inst.n(),
        edges: g.edge_count(),
        m: inst.m(),
        delta: g.max_degree(),
        cost_d1: 0.0,
        cost_d2: 0.0,
        cost_total: 0.0,
        opt: None,
        opt_mds: None,
        ratio_total: None,
        bound_total: total_bound(g.max_degree(), inst.m()),
        udg: g.is_udg(),
        violation: String::new(),
        ratio_d1: None,
        ratio_d2: None,
        elapsed_ms,
    };
    let report = match result {
        Ok(r) => r,
        Err(e) => {
            row.violation = format!("error: {e}");
            return row;
        }
    };
    row.cost_d1 = report.cost.d1;
    row.cost_d2 = report.cost.d2;
    row.cost_total = report.cost.total;
    let mut failures: Vec<&str> = Vec::new();
    if !report.verified() {
        failures.push("unverified");
    }
    if let Some(r) = &report.ratios {
        row.opt = Some(r.opt);
        row.opt_mds = Some(r.opt_mds);
        row.ratio_total = Some(r.ratio_total);
        row.ratio_d1 = Some(r.ratio_d1);
        row.ratio_d2 = Some(r.ratio_d2);
        // the baseline connector carries no guarantee
        if job.connector == Connector::Star {
            failures.extend(r.violations());
        } else if r.violations().contains(&"below_optimum") {
            failures.push("below_optimum");
        }
    }
    row.violation = failures.join(";");
    row
}

/// Runs every job on a pool of `threads` workers; rows come back in job order.
pub fn run_batch(jobs: &[Job], threads: usize, timing: bool) -> Result<Vec<BenchRow>, BatchError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| BatchError::Pool(e.to_string()))?;
    Ok(pool.install(|| jobs.par_iter().map(|j| evaluate(j, timing)).collect()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchSummary {
    pub schema: u32,
    pub instances: usize,
    pub with_oracle: usize,
    pub failures: usize,
    pub max_ratio_total: Option<f64>,
    pub mean_ratio_total: Option<f64>,
    pub max_ratio_d1: Option<f64>,
    pub max_ratio_d2: Option<f64>,
    pub rows: Vec<BenchRow>,
}

pub fn summarize(rows: Vec<BenchRow>) -> BenchSummary {
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.ratio_total).collect();
    let max = |it: &mut dyn Iterator<Item = f64>| it.reduce(f64::max);
    BenchSummary {
        schema: crate::solve::REPORT_SCHEMA,
        instances: rows.len(),
        with_oracle: ratios.len(),
        failures: rows.iter().filter(|r| r.failed()).count(),
        max_ratio_total: max(&mut ratios.iter().copied()),
        mean_ratio_total: (!ratios.is_empty())
            .then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
        max_ratio_d1: max(&mut rows.iter().filter_map(|r| r.ratio_d1)),
        max_ratio_d2: max(&mut rows.iter().filter_map(|r| r.ratio_d2)),
        rows,
    }
}
