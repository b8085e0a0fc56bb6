//! Library surface of the `sgs` command-line tool.
//!
//! The binary is a thin wrapper: every command is a function here that takes
//! resolved parameters and returns the CSV rows it would emit, so tests can
//! drive the exact production paths in-process.

pub mod commands;
pub mod config;
pub mod csvio;
pub mod error;
pub mod svg;

pub use commands::{cmd_bound, cmd_lecam, cmd_plot, cmd_sweep};
pub use config::ExperimentConfig;
pub use csvio::{write_rows, CsvRow, CSV_HEADER};
pub use error::{CliError, CliResult};
