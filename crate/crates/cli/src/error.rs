use std::process::ExitCode;

use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Pipeline(#[from] nagell::Error),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Parse(_) => 2,
            CliError::Pipeline(_) => 3,
            CliError::Usage(_) => 4,
            CliError::Io(_) => 1,
        })
    }

    /// The structured error object written to stderr.
    pub fn to_json(&self) -> String {
        let (name, step) = match self {
            CliError::Parse(_) => ("ParseError", None),
            CliError::Pipeline(e) => (e.name(), e.step().map(|s| s.name())),
            CliError::Usage(_) => ("UsageError", None),
            CliError::Io(_) => ("IoError", None),
        };
        json!({ "error": { "name": name, "step": step, "message": self.to_string() } }).to_string()
    }
}
