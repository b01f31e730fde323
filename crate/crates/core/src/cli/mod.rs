//! The `coising` command line.
//!
//! Every command reads graphs from catalog names or files, computes through
//! the library and emits CSV or JSON. With `--out DIR` results go to files
//! in `DIR` next to a `manifest.json`; otherwise the primary result goes to
//! stdout. Exit codes: 0 success, 1 computation failure, 2 usage error.

mod commands;
mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;

pub use manifest::{Digest, RunManifest};

/// Names the environment variable holding a default schedule CSV path.
pub const SCHEDULE_ENV: &str = "COISING_SCHEDULE";

#[derive(Debug, Clone, Parser, Serialize)]
#[command(
    name = "coising",
    version,
    about = "Tell co-Ising graphs apart with quantum thermal averages"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Caps the worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for output files and the run manifest.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format. Each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Validate inputs and configuration without computing.
    #[arg(long, global = true)]
    pub dry_run: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Classical Ising polynomial of a graph.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        /// Catalog name or graph file to compare against.
        #[arg(long)]
        compare: Option<String>,
    },
    /// Whether two graphs are co-Ising and whether they are isomorphic.
    Check {
        /// Catalog name or graph file.
        first: String,
        /// Catalog name or graph file.
        second: String,
    },
    /// Glues two rooted graphs at their roots and composes their spectra.
    Compose {
        first: String,
        second: String,
        /// 1-based root of the first graph.
        #[arg(long)]
        root1: usize,
        /// 1-based root of the second graph.
        #[arg(long)]
        root2: usize,
    },
    /// Pairs of non-isomorphic rooted trees with equal rooted spectra.
    SearchTrees {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
    },
    /// Observable curves over the pause point.
    Sweep {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        experiment: ExperimentArgs,
    },
    /// Sweeps several graphs and decides which pairs are distinguishable.
    Discriminate {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        experiment: ExperimentArgs,
    },
    /// Gauge-averaged sampling with per-gauge rows.
    Mimic {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        experiment: ExperimentArgs,
    },
    /// Native embeddings into a Chimera graph.
    Embed {
        #[command(flatten)]
        graph: GraphArgs,
        /// Chimera size: an m by m grid of cells.
        #[arg(long, default_value_t = 16)]
        m: usize,
        /// Number of distinct embeddings per graph.
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Lists the catalog, or prints one catalog graph.
    Catalog { name: Option<String> },
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    /// Graph files (edge list, JSON or listing).
    pub files: Vec<PathBuf>,
    /// Comma-separated catalog names. A trailing `i` gives a seeded
    /// isomorphic relabeling, e.g. `G13i`.
    #[arg(long, value_delimiter = ',')]
    pub catalog: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExperimentArgs {
    /// dense (the default), stochastic or sampled.
    #[arg(long)]
    pub method: Option<String>,
    /// A point count for a uniform grid on [0, 1], or comma-separated values.
    #[arg(long, default_value = "11")]
    pub grid: String,
    /// Schedule CSV with header `s,A,B`. Defaults to $COISING_SCHEDULE, then
    /// to the linear schedule.
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    /// Inverse temperature, overriding the schedule's.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Gauges per point for sampled runs.
    #[arg(long, default_value_t = 200)]
    pub gauges: usize,
    /// Readouts per gauge for sampled runs.
    #[arg(long, default_value_t = 1000)]
    pub anneals: usize,
    /// Bootstrap resamples over gauges.
    #[arg(long, default_value_t = 1000)]
    pub resamples: usize,
    /// Random probes per point for stochastic runs.
    #[arg(long, default_value_t = 50)]
    pub probes: usize,
    /// Krylov dimension for stochastic runs.
    #[arg(long, default_value_t = 80)]
    pub krylov: usize,
    /// Average over embeddings: a count to search for in C_m, or a
    /// directory of `*_embedding_*.json` files as written by `embed`.
    #[arg(long)]
    pub embeddings: Option<String>,
    /// Chimera size used when searching for embeddings.
    #[arg(long, default_value_t = 16)]
    pub m: usize,
}

/// How a command failed, which decides the exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, inputs or configuration.
    #[error("{0}")]
    Usage(Error),
    /// The computation itself failed.
    #[error("{0}")]
    Failure(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failure(e)
    }
}

pub(crate) trait UsageContext<T> {
    fn usage(self) -> Result<T, CliError>;
}

impl<T> UsageContext<T> for crate::error::Result<T> {
    fn usage(self) -> Result<T, CliError> {
        self.map_err(CliError::Usage)
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors are reported on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = std::io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command, writing stdout output to `stdout`. Returns the
/// manifest, which is also written to `--out` when given.
pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<RunManifest, CliError> {
    let threads = cli.global.threads.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Failure(Error::ResourceLimit(format!("thread pool: {e}"))))?;
    // The pool may run the command on another thread, so stdout output is
    // buffered and written once the command returns.
    let mut buffer = Vec::new();
    let result = pool.install(|| commands::dispatch(cli, &mut buffer));
    stdout
        .write_all(&buffer)
        .and_then(|_| stdout.flush())
        .map_err(|e| CliError::Failure(Error::io("<stdout>", e)))?;
    result
}
