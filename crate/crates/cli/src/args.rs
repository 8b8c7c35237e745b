use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "feedalloc", version, about = "Ad allocation in feeds with decaying attention")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance from a scheme or a key-value config file.
    Gen(GenArgs),
    /// Run a solver on an instance file.
    Solve(SolveArgs),
    /// Run an experiment suite and write CSV tables.
    Bench(BenchArgs),
    /// Check an allocation against an instance and evaluate it.
    Verify(VerifyArgs),
    /// Cumulative distribution of occupied slot indices, one series per allocation file.
    SlotsCdf(SlotsCdfArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Key-value generator config; flags given alongside override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub scheme: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Integer rewards 1..=10 instead of continuous ones.
    #[arg(long)]
    pub integer: bool,
    /// Last-slot reward of the adversarial chain.
    #[arg(long)]
    pub c: Option<f64>,
    /// Output file (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    /// Algorithm name; may also be given with --algorithm.
    #[arg(value_name = "ALGORITHM")]
    pub positional_algorithm: Option<String>,
    #[arg(long)]
    pub algorithm: Option<String>,
    /// Keep at most this many ads.
    #[arg(long)]
    pub k: Option<usize>,
    /// Threshold of the online threshold rule: a number or `auto`.
    #[arg(long)]
    pub threshold: Option<String>,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Also estimate the reward from this many simulated sessions.
    #[arg(long)]
    pub simulate: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Write the allocation to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Preset name (fig3, scalability, qsweep, klimit, native) or suite config file.
    pub suite: String,
    /// Comma-separated seeds, overriding the suite.
    #[arg(long, value_delimiter = ',')]
    pub seed: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    pub algorithm: Option<Vec<String>>,
    #[arg(long)]
    pub scheme: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Per-run wall-clock limit in seconds.
    #[arg(long)]
    pub time_limit: Option<f64>,
    /// Row CSV (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Summary CSV; defaults to `<out>` with a `.summary.csv` suffix.
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Run jobs one at a time.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Matching,
    Mapping,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub instance: PathBuf,
    pub allocation: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Matching)]
    pub mode: ModeArg,
    /// Number of simulated sessions.
    #[arg(long)]
    pub simulate: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct SlotsCdfArgs {
    #[arg(required = true)]
    pub allocations: Vec<PathBuf>,
    /// Number of slots (defaults to the instance's, or the largest occupied slot).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub instance: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
