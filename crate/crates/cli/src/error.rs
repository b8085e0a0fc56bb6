//! Error classification for exit codes: 2 for configuration and precondition
//! violations, 3 for runtime failures (I/O, malformed data files).

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Invalid configuration, flag values, or violated preconditions.
    Config(anyhow::Error),
    /// The command was well-formed but execution failed (I/O, bad data).
    Runtime(anyhow::Error),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(anyhow::anyhow!(msg.into()))
    }

    pub fn runtime(msg: impl Into<String>) -> Self {
        CliError::Runtime(anyhow::anyhow!(msg.into()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Runtime(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

// Core errors are all precondition/validation failures.
impl From<sgs_core::Error> for CliError {
    fn from(e: sgs_core::Error) -> Self {
        CliError::Config(e.into())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.into())
    }
}
