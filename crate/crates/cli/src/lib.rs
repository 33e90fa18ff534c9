//! Front end for `herzlab`: configuration, verification suites, report
//! emission and the subcommand drivers used by the `herzlab` binary.

pub mod commands;
pub mod config;
pub mod report;
pub mod suites;
pub mod svg;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("unknown oracle target `{0}`")]
    UnknownTarget(String),
    #[error(transparent)]
    Core(#[from] herzlab::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// Usage, configuration and input problems all exit with 2; check
    /// failures are not errors and exit with 1.
    pub fn exit_code(&self) -> u8 {
        2
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
