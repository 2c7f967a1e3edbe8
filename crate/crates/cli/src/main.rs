//! `mcs`: generate synthetic corpora, build candidate graphs, solve, rank,
//! evaluate and benchmark.

mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "mcs", version, about = "Maximum colorful subtree toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a synthetic corpus of compound bundles.
    Gen(GenArgs),
    /// Build a compound bundle from a spectrum file.
    Build(BuildArgs),
    /// Solve graph files or every candidate of a bundle.
    Solve(SolveArgs),
    /// Rank the candidates of each compound.
    Rank(RankArgs),
    /// Evaluate methods against the known truth.
    Eval(EvalArgs),
    /// Sorted cumulative running times per method.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct BuildOpts {
    /// Mass accuracy in ppm.
    #[arg(long, default_value_t = 10.0)]
    pub ppm: f64,
    /// Number of most intense explained peaks kept per candidate.
    #[arg(long = "max-peaks", default_value_t = 60)]
    pub max_peaks: usize,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// Output directory for the corpus.
    #[arg(long)]
    pub output: PathBuf,
    /// Number of compounds.
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    /// Overrides the seed of the generator configuration.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Generator configuration (TOML); built-in defaults when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub build: BuildOpts,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// Spectrum text file.
    #[arg(long)]
    pub input: PathBuf,
    /// Bundle directory to write.
    #[arg(long)]
    pub output: PathBuf,
    /// Known precursor formula, stored as the truth.
    #[arg(long)]
    pub truth: Option<String>,
    #[command(flatten)]
    pub build: BuildOpts,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Graph JSON files or bundle directories.
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    #[arg(long, default_value = "exact")]
    pub method: String,
    /// CSV report; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Directory for tree dumps in graph format.
    #[arg(long)]
    pub trees: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Args, Debug)]
pub struct RankArgs {
    /// Corpus or bundle directories.
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    /// Ranking method; in k-best mode the heuristic that orders candidates.
    #[arg(long, default_value = "exact")]
    pub method: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Exact k-best with gap pruning instead of a full ranking.
    #[arg(long)]
    pub kbest: bool,
    /// Rows per compound (all when omitted; 5 in k-best mode).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 10)]
    pub warmup: usize,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Corpus or bundle directories.
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    /// Comma-separated method ids or `all`.
    #[arg(long, default_value = "all")]
    pub method: String,
    /// Output directory for the CSV files.
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, required = true, num_args = 1..)]
    pub input: Vec<PathBuf>,
    #[arg(long, default_value = "all")]
    pub method: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub build: BuildOpts,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    /// Some rows errored; output was still written.
    Partial(String),
    /// Bad flags, configuration or unusable inputs.
    Config(String),
}

impl From<mcs_core::Error> for Failure {
    fn from(e: mcs_core::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => commands::gen(a),
        Command::Build(a) => commands::build(a),
        Command::Solve(a) => commands::solve(a),
        Command::Rank(a) => commands::rank(a),
        Command::Eval(a) => commands::eval(a),
        Command::Bench(a) => commands::bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Partial(msg)) => {
            eprintln!("mcs: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("mcs: {msg}");
            ExitCode::from(2)
        }
    }
}
