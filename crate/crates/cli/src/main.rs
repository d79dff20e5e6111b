use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cds_core::format::serialize_solution;
use cds_core::harness::{expand, run_batch, summarize, BatchSpec, CSV_COLUMNS};
use cds_core::{
    gen_fig1, gen_random_connected, gen_udg, parse_instance, parse_solution, serialize_instance,
    solve, verify_cds, Connector, Instance, SolveError, SolveOptions,
};

const THREADS_ENV: &str = "CDS_OPT_THREADS";

#[derive(Parser)]
#[command(
    name = "cds-opt",
    version,
    about = "Minimum weight connected m-fold dominating sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print a JSON report.
    Solve(SolveArgs),
    /// Generate an instance in the canonical text format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check a solution file against an instance.
    Verify {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Run a batch described by a TOML file.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Baseline {
    Star,
    Pairwise,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// Connector used in the second phase.
    #[arg(long, value_enum, default_value = "star")]
    baseline: Baseline,
    /// Connect a given dominating set instead of computing one.
    /// Without a value, reads the instance path with a `.ds` extension.
    #[arg(long, value_name = "FILE", num_args = 0..=1, require_equals = true)]
    given_ds: Option<Option<PathBuf>>,
    /// Compare against the exact optimum.
    #[arg(long)]
    oracle: bool,
    /// Largest instance the exact search accepts; implies --oracle.
    #[arg(long)]
    oracle_budget: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit wall-clock timings so reports are reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct Common {
    /// Fold of the domination requirement.
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Costs {
    #[arg(long, default_value_t = 0.1)]
    cost_lo: f64,
    #[arg(long, default_value_t = 10.0)]
    cost_hi: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum GenKind {
    /// Random connected graph: spanning tree plus independent edges.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[command(flatten)]
        costs: Costs,
        #[command(flatten)]
        common: Common,
    },
    /// Connected unit disk graph on a square.
    Udg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        side: f64,
        #[command(flatten)]
        costs: Costs,
        #[command(flatten)]
        common: Common,
    },
    /// The star-versus-pairs family with its designated dominating set.
    Fig1 {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        /// Where to write the designated set; defaults to the `.ds` sidecar of --out.
        #[arg(long)]
        ds_out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct BenchArgs {
    spec: PathBuf,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// JSON summary destination.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Worker count; the CDS_OPT_THREADS variable takes precedence.
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    no_timing: bool,
}

/// An error together with the exit code it maps to.
struct Failure(u8, anyhow::Error);

impl Failure {
    fn input(e: impl Into<anyhow::Error>) -> Self {
        Failure(2, e.into())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::input)
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?)
        .with_context(|| format!("{}", path.display()))
        .map_err(Failure::input)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("cannot write to stdout"),
    }
    .map_err(Failure::input)
}

fn sidecar(path: &Path) -> PathBuf {
    path.with_extension("ds")
}

fn cmd_solve(args: SolveArgs) -> CmdResult {
    let inst = load_instance(&args.instance)?;
    let given_ds = match &args.given_ds {
        None => None,
        Some(explicit) => {
            let path = explicit.clone().unwrap_or_else(|| sidecar(&args.instance));
            let ids = parse_solution(&read(&path)?, inst.n())
                .with_context(|| format!("{}", path.display()))
                .map_err(Failure::input)?;
            Some(ids)
        }
    };
    let oracle_budget = match (args.oracle, args.oracle_budget) {
        (_, Some(b)) => Some(b),
        (true, None) => Some(cds_core::oracle::DEFAULT_NODE_BUDGET),
        (false, None) => None,
    };
    let opts = SolveOptions {
        connector: match args.baseline {
            Baseline::Star => Connector::Star,
            Baseline::Pairwise => Connector::Pairwise,
        },
        given_ds,
        oracle_budget,
        timing: !args.no_timing,
    };
    let report = solve(&inst, &opts).map_err(|e| match e {
        SolveError::GivenNotDominating(_) | SolveError::Oracle(_) => Failure::input(e),
        other => Failure(3, other.into()),
    })?;
    let mut json = serde_json::to_string_pretty(&report).map_err(|e| Failure(3, e.into()))?;
    json.push('\n');
    emit(args.out.as_deref(), &json)?;
    if report.verified() {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("error: solver output failed verification");
        Ok(ExitCode::from(3))
    }
}

fn cmd_gen(kind: GenKind) -> CmdResult {
    let (inst, common, designated, ds_out) = match kind {
        GenKind::Random {
            n,
            p,
            costs,
            common,
        } => {
            let inst =
                gen_random_connected(n, p, (costs.cost_lo, costs.cost_hi), common.m, costs.seed);
            (inst, common, None, None)
        }
        GenKind::Udg {
            n,
            side,
            costs,
            common,
        } => {
            let inst = gen_udg(
                n,
                side,
                (costs.cost_lo, costs.cost_hi),
                common.m,
                costs.seed,
            );
            (inst, common, None, None)
        }
        GenKind::Fig1 {
            d,
            eps,
            ds_out,
            common,
        } => match gen_fig1(d, eps, common.m) {
            Ok(f) => (Ok(f.instance), common, Some(f.designated), ds_out),
            Err(e) => (Err(e), common, None, None),
        },
    };
    let inst = inst.map_err(Failure::input)?;
    emit(common.out.as_deref(), &serialize_instance(&inst))?;
    if let Some(ids) = designated {
        if let Some(path) = ds_out.or_else(|| common.out.as_deref().map(sidecar)) {
            fs::write(&path, serialize_solution(&ids))
                .with_context(|| format!("cannot write {}", path.display()))
                .map_err(Failure::input)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(instance: &Path, solution: &Path) -> CmdResult {
    let inst = load_instance(instance)?;
    let ids = parse_solution(&read(solution)?, inst.n())
        .with_context(|| format!("{}", solution.display()))
        .map_err(Failure::input)?;
    let report = verify_cds(&inst, &ids);
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure(2, e.into()))?;
    println!("{json}");
    for v in &report.violations {
        eprintln!("violation: {}", v.reason);
    }
    Ok(if report.is_cds == Some(true) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn pool_width(flag: Option<usize>, spec: Option<usize>) -> Result<usize, Failure> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Failure::input(anyhow!("{THREADS_ENV}={v:?} is not a thread count")))?;
        return Ok(n.max(1));
    }
    Ok(flag
        .or(spec)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1))
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    let spec: BatchSpec = toml::from_str(&read(&args.spec)?)
        .with_context(|| format!("{}", args.spec.display()))
        .map_err(Failure::input)?;
    let threads = pool_width(args.threads, spec.threads)?;
    let jobs = expand(&spec).map_err(Failure::input)?;
    let rows = run_batch(&jobs, threads, !args.no_timing).map_err(|e| Failure(1, e.into()))?;

    let mut csv = csv::Writer::from_writer(Vec::new());
    let write_err = |e: csv::Error| Failure(1, e.into());
    csv.write_record(CSV_COLUMNS).map_err(write_err)?;
    for row in &rows {
        csv.write_record(row.csv_record()).map_err(write_err)?;
    }
    let bytes = csv.into_inner().map_err(|e| Failure(1, anyhow!("{e}")))?;
    emit(args.csv.as_deref(), &String::from_utf8_lossy(&bytes))?;

    let summary = summarize(rows);
    for row in summary.rows.iter().filter(|r| r.failed()) {
        eprintln!("FAILURE {}: {}", row.label, row.violation);
    }
    eprintln!(
        "{} instances, {} with oracle, {} failures, max ratio {}",
        summary.instances,
        summary.with_oracle,
        summary.failures,
        summary
            .max_ratio_total
            .map_or("-".to_string(), |r| format!("{r:.4}"))
    );
    if let Some(path) = &args.json {
        let mut json = serde_json::to_string_pretty(&summary).map_err(|e| Failure(1, e.into()))?;
        json.push('\n');
        emit(Some(path), &json)?;
    }
    Ok(if summary.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Gen { kind } => cmd_gen(kind),
        Command::Verify { instance, solution } => cmd_verify(&instance, &solution),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
