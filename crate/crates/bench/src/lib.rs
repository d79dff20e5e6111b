//! Fixed instances shared by the benchmarks.

use cds_core::{
    gen_fig1, gen_random_connected, gen_udg, run_phase1, ComponentIndex, Instance, NodeId,
};

/// Random connected graph with average degree close to `avg_degree`.
pub fn random(n: usize, avg_degree: f64, m: usize, seed: u64) -> Instance {
    let p = (avg_degree / (n.max(2) - 1) as f64).min(1.0);
    gen_random_connected(n, p, (0.1, 10.0), m, seed).expect("valid parameters")
}

/// Unit disk graph with roughly `density` nodes per unit area.
pub fn udg(n: usize, density: f64, m: usize, seed: u64) -> Instance {
    let side = (n as f64 / density).sqrt();
    gen_udg(n, side, (0.1, 10.0), m, seed).expect("connected within the retry budget")
}

pub fn fig1(d: usize) -> (Instance, Vec<NodeId>) {
    let f = gen_fig1(d, 0.01, 1).expect("d > 0");
    (f.instance, f.designated)
}

/// An instance with its phase-one set, ready for the connection phase.
pub fn with_dominating_set(inst: Instance) -> (Instance, Vec<NodeId>) {
    let d1 = run_phase1(&inst).sorted();
    (inst, d1)
}

pub fn component_index(inst: &Instance, set: &[NodeId]) -> ComponentIndex {
    ComponentIndex::from_set(&inst.graph, set)
}
