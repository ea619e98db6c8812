//! Command-line front end for the `ybe` library.

pub mod commands;
pub mod document;
pub mod error;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

pub use document::{Body, SolutionDocument};
pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "ybe", version, about = "Finite set-theoretic solutions of the Yang-Baxter equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the braid relation and report elementary properties.
    Validate {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Report diagonals, retracts, towers, q-cycle data and orbits.
    Analyze(AnalyzeArgs),
    /// Enumerate all solutions of size n matching the filters.
    Enumerate(EnumerateArgs),
    /// Check every theorem over all solutions up to size n-max.
    Suite {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Regenerate the census file with the unpruned reference scan.
    CensusOracle {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    pub path: PathBuf,
    #[arg(long)]
    pub diag: bool,
    #[arg(long)]
    pub retract: bool,
    #[arg(long)]
    pub mpl: bool,
    #[arg(long)]
    pub kperm: bool,
    #[arg(long)]
    pub kred: bool,
    #[arg(long)]
    pub qcycle: bool,
    #[arg(long)]
    pub orbits: bool,
    #[arg(long)]
    pub star: bool,
    #[arg(long)]
    pub identities: bool,
    /// Every section; sections whose preconditions fail are reported as skipped.
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 3)]
    pub max_k: usize,
    /// Seed for sampled tower checks.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct EnumerateArgs {
    pub n: usize,
    #[arg(long)]
    pub nd: bool,
    #[arg(long)]
    pub left_nd: bool,
    #[arg(long)]
    pub right_nd: bool,
    #[arg(long)]
    pub involutive: bool,
    #[arg(long)]
    pub square_free: bool,
    #[arg(long)]
    pub bijective: bool,
    /// Keep one canonical representative per isomorphism class.
    #[arg(long)]
    pub iso: bool,
    /// Print raw and isomorphism-class counts.
    #[arg(long)]
    pub census: bool,
    /// Compare the counts with the checked-in census (implies --census).
    #[arg(long)]
    pub check_frozen: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

/// Result of one command: exit status plus both renderings of the report.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn from_error(e: &CliError) -> Self {
        Outcome {
            code: e.exit_code(),
            text: format!("error: {e}"),
            json: serde_json::json!({ "error": e.name(), "message": e.to_string() }),
        }
    }
}

/// Runs a parsed command and returns the report and exit status. The second
/// value is true when the machine-readable rendering was requested.
pub fn run(cli: &Cli) -> (Outcome, bool) {
    let (result, json) = match &cli.command {
        Command::Validate { path, json } => (commands::validate(path), *json),
        Command::Analyze(args) => (commands::analyze(args), args.json),
        Command::Enumerate(args) => (commands::enumerate(args), args.json),
        Command::Suite { n_max, seed, workers, json } => (commands::suite(*n_max, *seed, *workers), *json),
        Command::CensusOracle { out, workers } => (commands::census_oracle(out.as_deref(), *workers), false),
    };
    (result.unwrap_or_else(|e| Outcome::from_error(&e)), json)
}
