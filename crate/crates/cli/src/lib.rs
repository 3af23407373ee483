//! Command-line driver: instance generation, the colouring pipeline,
//! verification, parameter reports and occupancy tables.
//!
//! Exit codes: 0 success, 2 budget exceeded, 3 verification failure,
//! 4 input error.

pub mod args;
mod commands;

use std::fs;
use std::io::Write;
use std::path::Path;

use thiserror::Error;

pub use args::{Cli, Command};
pub use commands::{
    bench, build_params, colour, explore_b, generate_graph, occupancy, params_report, verify,
    BenchRow, BenchSummary, ColourOutput, ExploreSummary, OccupancyRow, ParamsReport,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 3,
            CliError::Input(_) | CliError::Io(_) => 4,
        }
    }
}

pub fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Runs one parsed command, writing its outputs, and returns the exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Generate(a) => commands::cmd_generate(&a),
        Command::Colour(a) => commands::cmd_colour(&a),
        Command::Params(a) => commands::cmd_params(&a),
        Command::Occupancy(a) => commands::cmd_occupancy(&a),
        Command::Verify(a) => commands::cmd_verify(&a),
        Command::ExploreB(a) => commands::cmd_explore_b(&a),
        Command::Bench(a) => commands::cmd_bench(&a),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes `text` to `path`, or to stdout when there is none.
fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}
