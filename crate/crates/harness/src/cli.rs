use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::experiment::{FunctionList, ParamSource};

/// Experiment runner for the IMHS+MDE optimizer on the LSGO benchmark
/// family.
#[derive(Debug, Parser)]
#[command(name = "lsgo", version, args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Seeded optimization runs; writes per-run results and summaries.
    Run(RunArgs),
    /// Ranks, Friedman/Quade tests, nBest and F1 scores over a result table.
    Stats(StatsArgs),
    /// GA tuning of (PAR, CR, F) for one or more functions.
    Tune(TuneArgs),
    /// Writes the JSON descriptor of a benchmark instance.
    BenchInfo(BenchInfoArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Output directory.
    #[arg(long, env = "LSGO_OUT_DIR", default_value = "lsgo-out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// `F1,F3`, `F1..F15`, `all`, or a mix.
    #[arg(long, default_value = "all")]
    pub functions: FunctionList,
    #[arg(long, default_value_t = 1000)]
    pub dim: usize,
    #[arg(long, default_value_t = 25)]
    pub runs: usize,
    /// Instance seed; run `i` uses optimizer seed `seed + i`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Scales IMHS and MDE iterations per cycle.
    #[arg(long, default_value_t = 1.0)]
    pub budget_scale: f64,
    /// `table2b`, `tuned:FILE` or `explicit:PAR,CR,F`.
    #[arg(long, default_value = "table2b")]
    pub params: ParamSource,
    /// Cycles after which the best value is recorded.
    #[arg(long, value_delimiter = ',', default_value = "4,20,100")]
    pub checkpoints: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub outer_iterations: usize,
    #[arg(long, default_value_t = 200)]
    pub population_size: usize,
    /// Worker threads; defaults to all hardware threads.
    #[arg(long)]
    pub parallel: Option<usize>,
    /// Re-derive every summary row from the per-run rows after writing.
    #[arg(long)]
    pub audit: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    /// The bundled 11-algorithm reference table.
    Paper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsMode {
    All,
    Ranks,
    Friedman,
    Quade,
    Nbest,
    F1,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[arg(
        long,
        value_enum,
        conflicts_with = "input",
        required_unless_present = "input"
    )]
    pub fixture: Option<Fixture>,
    /// Wide CSV: `algorithm,metric,F1,...`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Merge `--input` into the bundled table; input rows replace fixture
    /// rows with the same algorithm and metric.
    #[arg(long, requires = "input")]
    pub with_fixture: bool,
    #[arg(long, value_enum, default_value = "all")]
    pub mode: StatsMode,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TuneArgs {
    #[arg(long = "function", alias = "functions")]
    pub functions: FunctionList,
    #[arg(long, default_value_t = 1000)]
    pub dim: usize,
    /// Evaluations per probe run.
    #[arg(long, default_value_t = 30_000)]
    pub budget: u64,
    /// Probe runs averaged per individual.
    #[arg(long, default_value_t = 3)]
    pub probes: usize,
    #[arg(long, default_value_t = 10)]
    pub generations: usize,
    #[arg(long, default_value_t = 10)]
    pub ga_population: usize,
    #[arg(long, default_value_t = 200)]
    pub population_size: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub parallel: Option<usize>,
    #[command(flatten)]
    pub out: OutArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchInfoArgs {
    #[arg(long = "function", alias = "functions")]
    pub functions: FunctionList,
    #[arg(long, default_value_t = 1000)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutArgs,
}
