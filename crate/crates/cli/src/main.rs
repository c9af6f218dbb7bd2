//! `aoi`: analytics and simulation for the age of information in a
//! two-cell queue with threshold-based service preemption.
//!
//! Subcommands: `mean`, `transform`, `tail`, `sweep`, `simulate`,
//! `validate`. Model parameters come from flags (`--lambda`, `--theta`,
//! `--dist`) or from an optional TOML config file mirroring the long flag
//! names; flags win on conflict. Errors are reported as JSON on stderr with
//! exit code 2 for malformed input and 1 for a failed validation.

mod commands;
mod spec;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use spec::Cli;

/// Error carrying the process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn malformed(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<aoi_core::Error> for CliError {
    fn from(e: aoi_core::Error) -> Self {
        CliError::malformed(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::malformed(format!("io error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": e.to_string(), "code": 2 })
            );
            return ExitCode::from(2);
        }
    };
    if let Some(threads) = cli.threads {
        // A failed pool build only means a pool already exists (tests).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": e.message, "code": e.code })
            );
            ExitCode::from(e.code)
        }
    }
}
