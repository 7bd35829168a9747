//! `fjqn` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 budget exceeded.

mod args;
mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fjqn::animals::AnimalStrategy;
use fjqn::Error;

use args::{DistArgs, FamilyArgs};

const DEFAULT_SEED: u64 = 2024;

#[derive(Parser, Debug)]
#[command(name = "fjqn", version, about = "Fork-join queueing networks with blocking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a family member and write its network file.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        index: u32,
        #[arg(long, default_value_t = 1)]
        buffer: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Topological metrics of a network file.
    Metrics {
        network: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Throughput curve over family indices, as CSV.
    Simulate(SimulateArgs),
    /// Dimension report for a family over an index window.
    Dimension {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<u32>,
        #[arg(long, default_value_t = 8)]
        lambda_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scalability verdict for a family and tail index.
    Verdict {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        alpha: f64,
        /// Use dimensions computed over `--indices` instead of closed forms.
        #[arg(long, requires = "indices")]
        computed: bool,
        #[arg(long, value_delimiter = ',')]
        indices: Vec<u32>,
        #[arg(long, default_value_t = 8)]
        lambda_max: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum-weight path from job `m` at a node, as JSON lines.
    Lpp {
        network: PathBuf,
        #[arg(long)]
        m: u64,
        /// Start node; defaults to the lowest-id sink.
        #[arg(long)]
        node: Option<usize>,
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        replication: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lattice-animal weight per site against animal size, as CSV.
    Animal {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long, default_value_t = 16)]
        replications: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "greedy")]
        strategy: StrategyArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scaled Pareto maxima `E[M_n] / n^(1/α)` against `n`, as CSV.
    Evt {
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long, default_value_t = 1000)]
        replications: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug)]
struct SimulateArgs {
    /// Experiment config (JSON); other flags then only override the seed
    /// and output paths.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, required_unless_present = "config")]
    family: Option<String>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    clique: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    indices: Vec<u32>,
    #[arg(long, default_value_t = 1)]
    buffer: u32,
    #[command(flatten)]
    dist: DistArgs,
    #[arg(long)]
    m_max: Option<u64>,
    #[arg(long)]
    warmup: Option<u64>,
    #[arg(long)]
    replications: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0)]
    bound_samples: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Summary JSON with the fitted trend.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(clap::ValueEnum, Debug, Clone, Copy)]
enum StrategyArg {
    Greedy,
    Targeted,
}

impl From<StrategyArg> for AnimalStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Greedy => AnimalStrategy::Greedy,
            StrategyArg::Targeted => AnimalStrategy::Targeted,
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidParameter(_) | Error::Unsupported(_) | Error::Io(_) => 1,
        Error::BudgetExceeded(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
