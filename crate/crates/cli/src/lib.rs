//! Command-line driver: scenario loading, experiment orchestration and
//! CSV/SVG output.

pub mod commands;
pub mod error;
pub mod output;
pub mod scenario;
pub mod svg;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use error::CliError;
pub use scenario::Scenario;

/// Environment variable that replaces the scenario's master seed.
pub const SEED_ENV: &str = "DIDSIM_SEED";

#[derive(Debug, Parser)]
#[command(name = "didsim", version, about = "PBFT consensus latency in hybrid satellite-ground networks")]
pub struct Cli {
    /// Worker threads for Monte-Carlo trials; results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form success-probability and latency bounds.
    Bounds {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// One Monte-Carlo experiment.
    Simulate {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// One experiment per value of a swept parameter.
    Sweep {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        run: RunArgs,
        /// tx_power_dbm or n_nodes
        #[arg(long)]
        axis: String,
        /// Comma-separated, strictly increasing.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Data and plots for every figure, written into a directory.
    Figures {
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Writes the effective scenario with every default filled in.
    Scenario {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ScenarioArgs {
    /// JSON scenario; omitted keys take reference values.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Deployment mode: 1 ground, 2 satellite-assisted, 3 satellite.
    #[arg(long)]
    pub mode: Option<u8>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Number of chain nodes.
    #[arg(long = "n")]
    pub n_nodes: Option<usize>,
}

/// Runs a parsed command. `env_seed` is the raw value of [`SEED_ENV`].
pub fn run(cli: Cli, env_seed: Option<String>) -> Result<(), CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(CliError::Config("--workers must be at least 1".into()));
        }
        pool = pool.num_threads(w);
    }
    let pool = pool.build().map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    pool.install(|| commands::dispatch(cli.command, env_seed.as_deref()))
}
