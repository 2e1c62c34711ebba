//! Command-line driver: configuration parsing, simulation runs and
//! verification studies with table and CSV output.
//!
//! Exit codes: 0 success, 1 threshold or run failure, 2 usage or configuration error.

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use config::{parse_config, Config, ConfigError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "korteweg", version, about = "Two-phase compressible flow simulator and identity verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate a scenario and write diagnostics and snapshot CSVs.
    Simulate { config: PathBuf },
    /// Run identity checks on the manufactured family and judge them against the thresholds.
    Verify {
        config: PathBuf,
        /// Identity name or group (all, pressure, stress, dissipation, entropy, entropy/<model>).
        #[arg(long)]
        identity: Option<String>,
        /// Deliberately perturb the checkers (omit_zeta_eps, double_tau_star, drop_rho, biased_stencil).
        #[arg(long)]
        mutation: Option<String>,
    },
    /// Print observed convergence orders without judging them.
    Converge { config: PathBuf },
    /// Print the effective configuration (defaults, or the given file after parsing).
    DumpConfig { config: Option<PathBuf> },
}

/// Failure of a subcommand, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Config(ConfigError),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Config(e) => write!(f, "config error: {e}"),
            CliError::Failure(m) => write!(f, "failed: {m}"),
        }
    }
}

impl From<korteweg_core::Error> for CliError {
    fn from(e: korteweg_core::Error) -> Self {
        match e {
            korteweg_core::Error::Usage(_) | korteweg_core::Error::Domain(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

/// Runs the CLI with process stdout/stderr.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_cli_with(argv, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Runs the CLI writing to the given streams; returns the exit code.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Simulate { config } => commands::load(&config).and_then(|c| commands::simulate(&c, out)),
        Command::Verify { config, identity, mutation } => {
            commands::load(&config).and_then(|c| commands::verify(&c, identity.as_deref(), mutation.as_deref(), out))
        }
        Command::Converge { config } => commands::load(&config).and_then(|c| commands::converge(&c, out)),
        Command::DumpConfig { config } => match config {
            Some(path) => commands::load(&path),
            None => Ok(Config::default()),
        }
        .map(|c| {
            let _ = write!(out, "{}", c.dump());
        }),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}
