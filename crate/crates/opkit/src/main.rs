use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use opkit::bench::{self, BenchConfig};
use opkit::interp::{self, InterpConfig};
use opkit::opspec::{self, BuildParams};
use opkit::{CliError, Result};
use opkit_core::validate::dottest;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "opkit", version, about = "Matrix-free linear operator experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check <Au, v> = <u, A^H v> on random vectors (exit 1 on failure).
    Dottest(DottestArgs),
    /// Time forward products of structured operators and dense matrices.
    Bench(BenchArgs),
    /// Recover an irregularly sampled sum of sinusoids.
    Interp(InterpArgs),
}

#[derive(Args)]
struct DottestArgs {
    /// Operator expression, e.g. "chain(restriction, adjoint(dft))".
    #[arg(long)]
    op: String,
    /// Model length.
    #[arg(long, default_value_t = 64)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Seed for the random test vectors.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seed for restriction indices and diagonal entries.
    #[arg(long, default_value_t = 0)]
    indices_seed: u64,
    /// Fraction of samples kept by `restriction`.
    #[arg(long, default_value_t = 0.25)]
    fraction: f64,
    #[arg(long, default_value_t = 1.0)]
    dx: f64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "restriction,deriv1,dft")]
    ops: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "operator,dense")]
    impls: Vec<String>,
    #[arg(long, value_delimiter = ',', default_value = "1024,2048,4096,8192,16384")]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = bench::DEFAULT_REPEATS)]
    repeats: usize,
    /// Largest dense matrix (entries) to build; bigger sizes are skipped.
    #[arg(long, default_value_t = bench::DEFAULT_DENSE_CAP)]
    dense_cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "bench.csv")]
    out: PathBuf,
}

#[derive(Args)]
struct InterpArgs {
    #[arg(long, default_value_t = 256)]
    n: usize,
    #[arg(long, default_value_t = 0.25)]
    fraction: f64,
    #[arg(long, value_delimiter = ',', default_value = "8,21,34")]
    freqs: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1.0,0.5,0.25")]
    amps: Vec<f64>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    eps: f64,
    /// Absolute l1 weight; defaults to 0.05 * max|A^H y|.
    #[arg(long)]
    tau: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value = "interp-out")]
    out: PathBuf,
}

#[derive(Serialize)]
struct DottestJson<'a> {
    op: &'a str,
    shape: [usize; 2],
    passed: bool,
    trials: usize,
    tolerance: f64,
    worst_relative_error: f64,
    lhs_sample: [f64; 2],
    rhs_sample: [f64; 2],
}

fn cmd_dottest(args: &DottestArgs) -> Result<ExitCode> {
    if args.trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    let spec = opspec::parse(&args.op)?;
    let params = BuildParams {
        n: args.n,
        dx: args.dx,
        fraction: args.fraction,
        indices_seed: args.indices_seed,
    };
    let op = opspec::build(&spec, &params)?;
    let r = dottest(&op, args.trials, args.tol, args.seed);
    let json = DottestJson {
        op: &args.op,
        shape: [op.nrows(), op.ncols()],
        passed: r.passed,
        trials: r.trials,
        tolerance: r.tolerance,
        worst_relative_error: r.worst_relative_error,
        lhs_sample: [r.lhs_sample.re, r.lhs_sample.im],
        rhs_sample: [r.rhs_sample.re, r.rhs_sample.im],
    };
    println!("{}", serde_json::to_string_pretty(&json)?);
    Ok(if r.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode> {
    let cfg = BenchConfig {
        ops: args.ops.iter().map(|s| s.parse()).collect::<Result<_>>()?,
        impls: args.impls.iter().map(|s| s.parse()).collect::<Result<_>>()?,
        sizes: args.sizes.clone(),
        repeats: args.repeats,
        dense_cap: args.dense_cap,
        seed: args.seed,
    };
    cfg.validate()?;
    // fail on an unwritable path before spending minutes timing
    let file = fs::File::create(&args.out).map_err(|e| CliError::io(&args.out, e))?;
    eprintln!("# baselines: structured operator vs dense matrix (no sparse-matrix baseline)");
    let rows = bench::run(&cfg, |row| eprintln!("{row}"))?;
    bench::write_csv(&rows, file)?;
    for &op in &cfg.ops {
        for &impl_ in &cfg.impls {
            if let Some(slope) = bench::loglog_slope(&bench::series(&rows, op, impl_)) {
                println!("{:<12} {:<9} log-log slope {slope:.3}", op.name(), impl_.name());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_interp(args: &InterpArgs) -> Result<ExitCode> {
    let cfg = InterpConfig {
        n: args.n,
        sample_fraction: args.fraction,
        freqs: args.freqs.clone(),
        amps: args.amps.clone(),
        seed: args.seed,
        eps: args.eps,
        tau: args.tau,
        max_iters: args.max_iters,
        tol: args.tol,
    };
    let outcome = interp::run(&cfg)?;
    interp::write_outputs(&outcome, &args.out)?;
    let r = &outcome.report;
    println!("samples      {} of {}", r.sample_count, cfg.n);
    println!("naive        rel L2 error {:.4}", r.naive.rel_l2_error);
    println!("regularized  rel L2 error {:.4}", r.regularized.rel_l2_error);
    println!(
        "fista        rel L2 error {:.4}  support {:?} ({})",
        r.fista.method.rel_l2_error,
        r.fista.recovered_support,
        if r.fista.support_recovered { "exact" } else { "mismatch" }
    );
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Dottest(a) => cmd_dottest(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Interp(a) => cmd_interp(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
