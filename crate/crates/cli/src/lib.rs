//! Command-line experiment runner.
//!
//! [`run`] parses the arguments, executes one experiment and writes a CSV
//! table whose first line is a `#` comment with the fully resolved command.
//! Floating-point values are printed with 17 significant digits, so
//! re-running that command reproduces the file byte for byte.
//!
//! Exit codes: `0` on success, `2` for invalid arguments or configuration
//! (including an unwritable output path), `3` when the numerics fail.

mod args;
mod commands;
mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::Cli;

/// Why a command failed.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Invalid arguments or configuration.
    #[error("configuration error: {0}")]
    Config(String),
    /// An integrator or diagnostic failed while running.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// The output could not be written.
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Output(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<analysis::AnalysisError> for CliError {
    fn from(e: analysis::AnalysisError) -> Self {
        match e {
            analysis::AnalysisError::InvalidInput(msg) => CliError::Config(msg),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("pds-cli: {e}");
            e.exit_code()
        }
    }
}

/// Executes a parsed command line, writing the CSV to `--out` or standard output.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cli.threads {
            if n == 0 {
                return Err(CliError::Config("--threads must be positive".into()));
            }
            builder = builder.num_threads(n);
        }
        builder
            .build()
            .map_err(|e| CliError::Config(format!("cannot start worker threads: {e}")))?
    };
    let text = pool.install(|| commands::dispatch(&cli.command))?;
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
