//! `helly`: generate, analyze and verify colorful fractional Helly instances.

mod commands;
mod exit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use exit::{Code, Failure};

#[derive(Debug, Parser)]
#[command(name = "helly", version, about)]
struct Cli {
    /// Worker threads for tuple evaluation (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an instance file and a JSON sidecar describing it.
    Generate(GenerateArgs),
    /// Count intersecting tuples, matchings and maxima of an instance.
    Analyze(AnalyzeArgs),
    /// Check the colorful fractional Helly lower bound on an instance.
    Verify(VerifyArgs),
    /// Emit (alpha, beta_observed, lower_bound, upper_bound) rows as CSV.
    Sweep(SweepArgs),
    /// Compare the simplex kernel with Fourier–Motzkin on random systems.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Mono,
    Colorful,
    Random,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    dim: usize,
    /// Family size (mono) or class size (colorful, random).
    #[arg(long)]
    n: usize,
    /// Rational `p/q`; required for mono and colorful.
    #[arg(long)]
    beta: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Set model for random instances: boxes, halfspaces, mixed.
    #[arg(long, default_value = "mixed")]
    model: String,
    /// Comma-separated class sizes for random instances (overrides --n).
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long)]
    out: PathBuf,
    /// Sidecar path (default: `<out>.json`).
    #[arg(long)]
    sidecar: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = helly_core::colorful::DEFAULT_MAX_EXACT_N)]
    max_exact_n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = helly_core::colorful::DEFAULT_MAX_EXACT_N)]
    max_exact_n: usize,
    /// Fail with the scale exit code instead of falling back to extraction.
    #[arg(long)]
    require_exact: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    n: usize,
    /// Comma-separated beta grid for a construction sweep.
    #[arg(long, conflicts_with = "seeds")]
    beta: Option<String>,
    /// Seed grid for a random sweep: `a..b` (exclusive) or a comma list.
    #[arg(long)]
    seeds: Option<String>,
    /// Seed for construction sweeps.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "mixed")]
    model: String,
    #[arg(long, default_value_t = helly_core::colorful::DEFAULT_MAX_EXACT_N)]
    max_exact_n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 500)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

fn invocation() -> Vec<String> {
    std::iter::once("helly".to_string())
        .chain(std::env::args().skip(1))
        .collect()
}

fn run(cli: Cli) -> Result<Code, Failure> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    let invocation = invocation();
    match cli.command {
        Command::Generate(a) => commands::generate(&a, &invocation),
        Command::Analyze(a) => commands::analyze(&a, &invocation),
        Command::Verify(a) => commands::verify(&a, &invocation),
        Command::Sweep(a) => commands::sweep(&a, &invocation),
        Command::OracleCheck(a) => commands::oracle_check(&a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code as u8)
        }
    }
}
