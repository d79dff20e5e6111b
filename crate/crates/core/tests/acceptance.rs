//! Acceptance suite. Each test prints one `PASS`/`FAIL` line.
//!
//! Run with `cargo test -p cds-core --test acceptance -- --nocapture`.

mod common;

use std::time::{Duration, Instant};

use cds_core::ratio::{phase1_bound, total_bound, udg_connector_bound, within_bound};
use cds_core::*;
use common::*;
use rand::Rng;

fn report(id: &str, name: &str, ok: bool, detail: String) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("[{verdict}] criterion {id} {name}: {detail}");
}

const CORPUS_SEED: u64 = 2024;
const CORPUS_SIZE: usize = 240;

#[test]
fn criterion_1_fig1_regression() {
    let start = Instant::now();
    let eps = 0.01;
    let mut failures = Vec::new();
    for d in [3usize, 5, 10] {
        let f = gen_fig1(d, eps, 1).unwrap();
        let star = run_phase2(&f.instance, &f.designated).unwrap();
        let pair = run_pairwise_baseline(&f.instance, &f.designated).unwrap();
        let mut expected: Vec<_> = std::iter::once(f.hub)
            .chain(f.lower.iter().copied())
            .collect();
        expected.sort_unstable();
        let star_cost = star.cost(&f.instance.graph);
        let pair_cost = pair.cost(&f.instance.graph);
        let want_star = 1.0 + (d as f64 + 1.0) * eps;
        let want_pair = d as f64 * (1.0 + eps);
        if star.sorted_d2() != expected {
            failures.push(format!("d={d}: star D2 {:?}", star.sorted_d2()));
        }
        if (star_cost - want_star).abs() > 1e-12 {
            failures.push(format!("d={d}: star cost {star_cost} != {want_star}"));
        }
        if (pair_cost - want_pair).abs() > 1e-12 {
            failures.push(format!("d={d}: pairwise cost {pair_cost} != {want_pair}"));
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        failures.push(format!("runtime {elapsed:?}"));
    }
    report(
        "1",
        "fig1 regression",
        failures.is_empty(),
        format!("d in {{3,5,10}}, {elapsed:?}, {failures:?}"),
    );
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_2_and_3_ratio_bounds() {
    let start = Instant::now();
    let corpus = random_corpus(CORPUS_SIZE, CORPUS_SEED);
    let mut total_viol = Vec::new();
    let mut phase1_viol = Vec::new();
    let (mut worst_total, mut worst_d1) = (0.0f64, 0.0f64);
    for (i, inst) in corpus.iter().enumerate() {
        assert!(inst.n() <= 12);
        let p1 = run_phase1(inst);
        let d1 = p1.sorted();
        let d2 = run_phase2(inst, &d1).unwrap().sorted_d2();
        let g = &inst.graph;
        let opt = exact_opt_cds(inst, 16).unwrap();
        let opt_mds = exact_opt_mds(inst, 16).unwrap();
        assert!(opt.exhausted && opt_mds.exhausted);
        let (delta, m) = (g.max_degree(), inst.m());
        let total = g.set_cost(&d1) + g.set_cost(&d2);
        let c1 = g.set_cost(&d1);
        worst_total = worst_total.max(total / opt.opt_cost / total_bound(delta, m));
        worst_d1 = worst_d1.max(c1 / opt_mds.opt_cost / phase1_bound(delta, m));
        if !within_bound(total, total_bound(delta, m), opt.opt_cost) {
            total_viol.push(i);
        }
        if !within_bound(c1, phase1_bound(delta, m), opt_mds.opt_cost) {
            phase1_viol.push(i);
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed < Duration::from_secs(600);
    report(
        "2",
        "overall ratio bound",
        total_viol.is_empty() && in_time,
        format!(
            "{} instances, {} violations, max ratio/bound {worst_total:.4}, {elapsed:?}",
            corpus.len(),
            total_viol.len()
        ),
    );
    report(
        "3",
        "phase-1 bound vs opt'",
        phase1_viol.is_empty(),
        format!(
            "{} instances, {} violations, max ratio/bound {worst_d1:.4}",
            corpus.len(),
            phase1_viol.len()
        ),
    );
    assert!(
        total_viol.is_empty(),
        "total bound violated on {total_viol:?}"
    );
    assert!(
        phase1_viol.is_empty(),
        "phase-1 bound violated on {phase1_viol:?}"
    );
    assert!(in_time, "{elapsed:?}");
}

#[test]
fn criterion_4_udg_connector_bound() {
    let mut r = rng(404);
    let mut violations = Vec::new();
    let mut worst = 0.0f64;
    let mut with_connector = 0;
    let count = 80;
    for i in 0..count {
        let n = r.gen_range(5..=12);
        let side = r.gen_range(1.5..=2.5);
        let inst = gen_udg(n, side, (0.1, 10.0), 1 + i % 3, r.gen()).unwrap();
        assert!(inst.graph.is_udg() && inst.n() <= 12);
        let d1 = run_phase1(&inst).sorted();
        let report = run_phase2(&inst, &d1).unwrap();
        if !report.steps.is_empty() {
            with_connector += 1;
        }
        let c2 = report.cost(&inst.graph);
        let opt = exact_opt_cds(&inst, 16).unwrap().opt_cost;
        worst = worst.max(c2 / opt);
        if !within_bound(c2, udg_connector_bound(), opt) {
            violations.push(i);
        }
    }
    report(
        "4",
        "UDG connector bound",
        violations.is_empty(),
        format!(
            "{count} instances ({with_connector} needed connectors), {} violations, max c(D2)/opt {worst:.4}",
            violations.len()
        ),
    );
    assert!(violations.is_empty(), "{violations:?}");
}

#[test]
fn criterion_5_submodularity() {
    let mut r = rng(505);
    let mut violations = 0;
    let mut triples = 0;
    while triples < 10_000 {
        let n = r.gen_range(2..=14);
        let m = r.gen_range(1..=3);
        let inst = gen_random_connected(n, r.gen_range(0.1..0.8), (0.1, 10.0), m, r.gen()).unwrap();
        if brute_q(&inst, &[]) != 0 {
            violations += 1;
        }
        for _ in 0..50 {
            let d: Vec<_> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
            let outside: Vec<_> = (0..n).filter(|u| !d.contains(u)).collect();
            if outside.is_empty() {
                continue;
            }
            let c: Vec<_> = d.iter().copied().filter(|_| r.gen_bool(0.5)).collect();
            let u = outside[r.gen_range(0..outside.len())];
            let (qc, qd) = (brute_q(&inst, &c), brute_q(&inst, &d));
            let with = |s: &[NodeId]| {
                let mut v = s.to_vec();
                v.push(u);
                brute_q(&inst, &v)
            };
            let (gc, gd) = (with(&c) - qc, with(&d) - qd);
            // the solver's incremental gain must agree with the definition too
            let state = DeficitState::with_set(&inst.graph, m, &c);
            let fast = marginal_gain_q(&inst.graph, &state, u).unwrap() as i64;
            if qc > qd || gc < gd || fast != gc || q_value(&inst, &d) as i64 != qd {
                violations += 1;
            }
            triples += 1;
        }
    }
    report(
        "5",
        "q monotone and submodular",
        violations == 0,
        format!("{triples} triples, {violations} violations"),
    );
    assert_eq!(violations, 0);
}

#[test]
fn criterion_6_star_search_optimality() {
    let mut r = rng(606);
    let mut graphs = 0;
    let mut global_mismatch = 0;
    let mut center_overclaim = 0;
    let mut p_mismatch = 0;
    let mut center_gaps = 0;
    let mut centers = 0;
    while graphs < 100 {
        let n = r.gen_range(6..=14);
        let inst =
            gen_random_connected(n, r.gen_range(0.15..0.5), (0.1, 10.0), 1, r.gen()).unwrap();
        let g = &inst.graph;
        if g.max_degree() > 10 {
            continue;
        }
        let d = random_dominating_set(g, 0.25, &mut r);
        let idx = ComponentIndex::from_set(g, &d);
        if idx.component_count() < 2 {
            continue;
        }
        graphs += 1;
        let (mut best_fast, mut best_brute) = (0.0f64, 0.0f64);
        for u in (0..n).filter(|u| !d.contains(u)) {
            centers += 1;
            let fast = best_star_at(&idx, g, u).unwrap();
            let brute = efficiency(brute_best_star_at(g, &d, u));
            let fe = fast.as_ref().map_or(0.0, |s| s.efficiency());
            if let Some(s) = &fast {
                if s.p_prime as i64 != brute_p_prime(g, &d, u, &s.leaves) {
                    p_mismatch += 1;
                }
            }
            if fe > brute * (1.0 + 1e-12) {
                center_overclaim += 1;
            }
            if !close(fe, brute, 1e-9) {
                center_gaps += 1;
            }
            best_fast = best_fast.max(fe);
            best_brute = best_brute.max(brute);
        }
        let chosen = best_star(&idx, g).unwrap().map_or(0.0, |s| s.efficiency());
        if !close(best_fast, best_brute, 1e-9) || !close(chosen, best_brute, 1e-9) {
            global_mismatch += 1;
        }
    }
    let ok = global_mismatch == 0 && center_overclaim == 0 && p_mismatch == 0;
    report(
        "6",
        "star search optimality",
        ok,
        format!(
            "{graphs} graphs, {global_mismatch} global mismatches, {center_overclaim} overclaims, \
             {p_mismatch} p' mismatches; {center_gaps}/{centers} centers below their local brute maximum"
        ),
    );
    assert!(ok);
}

fn phase2_corpus() -> Vec<Instance> {
    // the ratio corpus plus a larger one where phase 2 has more to do
    let mut corpus = random_corpus(CORPUS_SIZE, CORPUS_SEED);
    corpus.extend(random_corpus(2000, 7));
    corpus
}

fn phase2_traces() -> Vec<(Instance, Vec<NodeId>, cds_core::connector::ConnectReport)> {
    phase2_corpus()
        .into_iter()
        .map(|inst| {
            let d1 = run_phase1(&inst).sorted();
            let rep = run_phase2(&inst, &d1).unwrap();
            (inst, d1, rep)
        })
        .collect()
}

#[test]
fn criterion_7a_reduction_equals_p_prime() {
    let traces = phase2_traces();
    let mut steps = 0;
    let mut bad = 0;
    for (_, _, rep) in &traces {
        for s in &rep.steps {
            steps += 1;
            if s.reduction() != s.star.p_prime || s.star.p_prime == 0 {
                bad += 1;
            }
        }
    }
    report(
        "7a",
        "measured reduction equals p'",
        bad == 0,
        format!("{} traces, {steps} steps, {bad} violations", traces.len()),
    );
    assert_eq!(bad, 0);
}

#[test]
fn criterion_7b_cost_per_unit_nondecreasing() {
    let traces = phase2_traces();
    let mut pairs = 0;
    let mut bad = Vec::new();
    for (k, (inst, _, rep)) in traces.iter().enumerate() {
        for w in rep.steps.windows(2) {
            pairs += 1;
            let (a, b) = (w[0].cost_per_unit(), w[1].cost_per_unit());
            if b < a * (1.0 - 1e-12) {
                bad.push(format!("#{k} {}: {a:.4} -> {b:.4}", inst.label));
            }
        }
    }
    report(
        "7b",
        "chosen cost/p' nondecreasing",
        bad.is_empty(),
        format!(
            "{pairs} consecutive pairs, {} decreases, first {:?}",
            bad.len(),
            bad.first()
        ),
    );
    assert!(bad.is_empty(), "{} decreases: {bad:?}", bad.len());
}

#[test]
fn criterion_7c_progress_star_exists() {
    let traces = phase2_traces();
    let mut states = 0;
    let mut bad = 0;
    for (inst, d1, rep) in &traces {
        let g = &inst.graph;
        let mut d = d1.clone();
        let mut check = |d: &[NodeId]| {
            if count_components(g, &mask(g.node_count(), d)) > 1 {
                states += 1;
                let idx = ComponentIndex::from_set(g, d);
                let found = best_star(&idx, g).unwrap().is_some_and(|s| s.p_prime >= 1);
                if !found || !short_connector_exists(g, d) {
                    bad += 1;
                }
            }
        };
        check(&d);
        for s in &rep.steps {
            d.extend(s.star.nodes());
            check(&d);
        }
    }
    report(
        "7c",
        "a star with p' >= 1 exists while disconnected",
        bad == 0,
        format!(
            "{} traces, {states} disconnected states, {bad} violations",
            traces.len()
        ),
    );
    assert_eq!(bad, 0);
}

#[test]
fn criterion_8_validity() {
    let start = Instant::now();
    let mut r = rng(808);
    let mut bad = Vec::new();
    let count = 1000;
    for i in 0..count {
        let n = r.gen_range(1..=60);
        let m = 1 + i % 3;
        let inst = if i % 4 == 3 {
            let side = (n as f64).sqrt() * 0.6;
            gen_udg(n, side.max(0.5), (0.1, 10.0), m, r.gen()).unwrap()
        } else {
            gen_random_connected(n, r.gen_range(0.03..0.5), (0.1, 10.0), m, r.gen()).unwrap()
        };
        let p1 = run_phase1(&inst);
        if !verify_mds(&inst, &p1.set).is_m_ds {
            bad.push(format!("{}: phase 1", inst.label));
        }
        for connector in [Connector::Star, Connector::Pairwise] {
            let opts = SolveOptions {
                connector,
                ..Default::default()
            };
            let rep = solve(&inst, &opts).unwrap();
            if !rep.verified() || !verify_mds(&inst, &rep.d1).is_m_ds {
                bad.push(format!("{}: {connector:?}", inst.label));
            }
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed < Duration::from_secs(300);
    report(
        "8",
        "validity",
        bad.is_empty() && in_time,
        format!("{count} instances, {} failures, {elapsed:?}", bad.len()),
    );
    assert!(bad.is_empty(), "{bad:?}");
    assert!(in_time);
}
