//! Command-line front end: spectral-localizer runs on the truncated
//! torus, gap/signature reports for matrices, parameter sweeps, and
//! class labels.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation error.

mod commands;
mod config;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "specloc",
    version,
    about = "Spectral-localizer indices and hermitian-form invariants of truncated operator systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the truncated-torus pipeline for one (m, rho, kappa) point.
    Torus(TorusArgs),
    /// Report gap, signature, and inertia of a matrix in JSON form.
    Form(FormArgs),
    /// Run a parameter sweep from a CSV of (m, rho, kappa) rows.
    Sweep(SweepArgs),
    /// Homotopy-class label operations.
    #[command(subcommand)]
    Ktheory(KtheoryCommand),
    /// Measure profile residuals and spot-check the core invariants.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Args)]
struct TorusArgs {
    /// Winding number of the unitary in the projection symbol.
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    /// Spectral truncation radius.
    #[arg(long)]
    rho: f64,
    /// Localizer coupling.
    #[arg(long, allow_hyphen_values = true)]
    kappa: f64,
    /// Fourier bandwidth for the profile (power of two in [16, 4096]).
    #[arg(long)]
    bandwidth: Option<usize>,
    /// Commutator window pad (defaults to bandwidth + |m|).
    #[arg(long)]
    pad: Option<i64>,
    #[arg(long, value_enum)]
    format: Option<ReportFormat>,
    /// Write the localizer eigenvalues here, one per line, ascending.
    #[arg(long)]
    dump_spectrum: Option<PathBuf>,
    /// Write x, the Dirac block, and the localizer as matrix JSON files
    /// into this directory.
    #[arg(long)]
    dump_operators: Option<PathBuf>,
    /// Relative singularity tolerance for the index (default 1e-6).
    #[arg(long)]
    singularity_tol: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct FormArgs {
    /// Matrix JSON file: { "n": int, "re": [[..]], "im": [[..]] }.
    path: PathBuf,
    /// Block sizes of the operator system (default one scalar block).
    #[arg(long, value_delimiter = ',')]
    blocks: Option<Vec<usize>>,
    /// Also report the rank of the Witt projection.
    #[arg(long)]
    witt: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: TextFormat,
}

#[derive(Args)]
struct SweepArgs {
    /// CSV of parameter rows `m,rho,kappa` (header optional).
    input: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Row parallelism (0 = all cores; falls back to LOCALIZER_THREADS).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    bandwidth: Option<usize>,
    #[arg(long)]
    pad: Option<i64>,
    #[arg(long, value_enum)]
    format: Option<ReportFormat>,
    /// Write per-row eigenvalue files `<path>.<row>` (ascending).
    #[arg(long)]
    dump_spectrum: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum KtheoryCommand {
    /// Classify a block-diagonal hermitian form into its inertia label.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Matrix JSON file.
    path: PathBuf,
    /// Block sizes k1,k2,... of the operator system.
    #[arg(long, value_delimiter = ',', required = true)]
    blocks: Vec<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: TextFormat,
}

#[derive(Args)]
struct SelftestArgs {
    /// Seed for the randomized spot checks.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Errors split by exit code.
enum CliError {
    Usage(String),
    Compute(String),
}

impl From<specloc_core::Error> for CliError {
    fn from(err: specloc_core::Error) -> Self {
        CliError::Compute(err.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Torus(args) => commands::torus(args),
        Command::Form(args) => commands::form(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Ktheory(KtheoryCommand::Classify(args)) => commands::classify(args),
        Command::Selftest(args) => commands::selftest(args),
    };
    match outcome {
        Ok(()) => 0,
        Err(CliError::Usage(message)) => {
            eprintln!("usage error: {message}");
            1
        }
        Err(CliError::Compute(message)) => {
            eprintln!("error: {message}");
            2
        }
    }
}
