use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::solver::{Algorithm, Feedback};

#[derive(Parser, Debug)]
#[command(
    name = "idnc",
    version,
    about = "Strict IDNC solver, bounds and erasure-broadcast simulator"
)]
pub(super) struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub(super) enum Command {
    /// Solve one feedback matrix read from a JSON or CSV file.
    Solve(SolveArgs),
    /// Throughput and delay bounds of one instance.
    Bounds(BoundsArgs),
    /// Monte Carlo sessions of one or more schemes.
    Simulate(SimulateArgs),
    /// Parameter sweeps at the default experiment scale.
    #[command(subcommand)]
    Sweep(SweepCommand),
}

#[derive(Subcommand, Debug)]
pub(super) enum SweepCommand {
    /// Bounds over random conflict graphs with a growing number of zeros.
    Bounds(SweepBoundsArgs),
    /// Coded transmissions and delay of every scheme against receiver count.
    Schemes(SweepSchemesArgs),
}

#[derive(Args, Debug)]
pub(super) struct OutputArgs {
    /// Output file, written atomically; standard output when absent.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(super) enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(super) enum ModeArg {
    Exact,
    Heuristic,
}

#[derive(Args, Debug)]
pub(super) struct SolveArgs {
    /// Feedback matrix; `.csv` files are read as CSV, anything else as JSON.
    #[arg(long)]
    pub sfm: PathBuf,
    /// optimal, hybrid or heuristic.
    #[arg(long, default_value = "optimal")]
    pub scheme: Algorithm,
    /// semi or fully.
    #[arg(long, default_value = "semi")]
    pub feedback: Feedback,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub(super) struct BoundsArgs {
    /// Feedback matrix file; alternative to `--k` and `--m0`.
    #[arg(long)]
    pub sfm: Option<PathBuf>,
    /// Packets of a random instance.
    #[arg(long)]
    pub k: Option<usize>,
    /// Zeros of the random conflict matrix.
    #[arg(long)]
    pub m0: Option<usize>,
    /// Demand counts of a random instance are uniform on `1..=t-max` (default `k`).
    #[arg(long)]
    pub t_max: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub(super) struct SchemeRunArgs {
    /// Comma-separated schemes such as `optimal-semi,rlnc`, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub scheme: Vec<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Run trials on one thread (results are identical either way).
    #[arg(long)]
    pub serial: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub(super) struct SimulateArgs {
    #[arg(long)]
    pub kt: usize,
    /// Receiver counts, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub nt: Vec<usize>,
    /// Erasure probabilities, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub pe: Vec<f64>,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[command(flatten)]
    pub run: SchemeRunArgs,
}

#[derive(Args, Debug)]
pub(super) struct SweepSchemesArgs {
    #[arg(long, default_value_t = 15)]
    pub kt: usize,
    #[arg(long, value_delimiter = ',', default_value = "5,15,25,35,45")]
    pub nt: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "0.05,0.2")]
    pub pe: Vec<f64>,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[command(flatten)]
    pub run: SchemeRunArgs,
}

#[derive(Args, Debug)]
pub(super) struct SweepBoundsArgs {
    #[arg(long, default_value_t = 15)]
    pub k: usize,
    /// Zero counts, comma-separated; default `0,10,...,100`.
    #[arg(long, value_delimiter = ',')]
    pub m0: Vec<usize>,
    #[arg(long)]
    pub t_max: Option<usize>,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub serial: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}
