//! `skidsim`: evaluate, sweep, and integrate the traction-mode skid model.

mod cli;
mod cmd;
mod config;
mod output;

use std::process::ExitCode;

use clap::Parser;
use skidsim_core::SkidError;

/// Failure categories, each mapped to its own process exit code.
#[derive(Debug)]
pub enum CliError {
    CheckFailed(String),
    Validation(String),
    Singular(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Singular(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::CheckFailed(m) | CliError::Validation(m) | CliError::Singular(m) => {
                f.write_str(m)
            }
        }
    }
}

impl From<SkidError> for CliError {
    fn from(e: SkidError) -> Self {
        if e.is_singular() {
            CliError::Singular(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Validation(format!("i/o error: {e}"))
    }
}

/// Sizes the global rayon pool from `SKIDSIM_THREADS` (unset or 0 = auto).
fn configure_threads() -> Result<(), CliError> {
    let threads = match std::env::var("SKIDSIM_THREADS") {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            CliError::Validation(format!(
                "SKIDSIM_THREADS must be a non-negative integer, got `{v}`"
            ))
        })?,
        Err(_) => 0,
    };
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Validation(format!("cannot size thread pool: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = cli::Cli::parse();
    match configure_threads().and_then(|()| cmd::run(args)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("skidsim: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
