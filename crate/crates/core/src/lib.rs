//! Greedy approximation for the minimum weight connected m-fold dominating
//! set problem.
//!
//! A solution `D` must leave every node outside `D` with at least `m`
//! neighbors in `D` and induce a connected subgraph. The solver works in
//! two phases:
//!
//! 1. [`domination::run_phase1`] builds an m-fold dominating set `D1` by a
//!    submodular-cover greedy on the residual-deficit potential.
//! 2. [`connector::run_phase2`] connects `D1` by repeatedly adding the star
//!    with the best capped component-merging potential per unit cost.
//!
//! The result costs at most `H(δ + m) + 2·H(δ − 1)` times the optimum,
//! where `δ` is the maximum degree. [`oracle`] computes exact optima for
//! small instances so the bound can be checked empirically.

pub mod components;
pub mod connector;
pub mod domination;
pub mod format;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod oracle;
pub mod ratio;
pub mod solve;
pub mod verify;

pub use components::ComponentIndex;
pub use connector::{
    best_star, best_star_at, component_neighbors, p_prime, run_pairwise_baseline, run_phase2,
    ChosenStar, ConnectError, ConnectReport, StarCandidate,
};
pub use domination::{marginal_gain_q, q_value, run_phase1, DeficitState, GreedyTrace, Phase1};
pub use format::{parse_instance, parse_solution, serialize_instance, ParseError};
pub use generate::{gen_fig1, gen_random_connected, gen_udg, Fig1, GenError};
pub use graph::{GraphError, Instance, NodeId, WeightedGraph};
pub use oracle::{exact_opt_cds, exact_opt_mds, OracleError, OracleResult};
pub use ratio::{harmonic, ratio_report, RatioRecord};
pub use solve::{solve, Connector, SolveError, SolveOptions, SolveReport};
pub use verify::{verify_cds, verify_mds, VerifyReport};
