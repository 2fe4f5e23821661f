//! Front end of the `orbifold` binary: argument model, group files, the
//! spectrum cache, subcommands and report rendering.

pub mod args;
pub mod cache;
pub mod commands;
pub mod groupfile;
pub mod output;

pub use args::{Cli, Command};
pub use output::{Format, Report};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Bad invocation: unknown flags, invalid parameters, unreadable inputs.
pub const EXIT_USAGE: i32 = 1;
/// An asserted identity was out of tolerance.
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot load group: {0}")]
    Load(String),
    #[error(transparent)]
    Core(#[from] orbifold_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Runs a parsed command line and returns the rendered report with its
/// exit status.
pub fn run(cli: &Cli) -> Result<(String, i32), CliError> {
    let cache = cache::Cache::new(cli.cache_dir.clone());
    let report = commands::dispatch(&cli.command, &cache)?;
    let text = output::render(&report, cli.output)?;
    Ok((text, if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED }))
}
