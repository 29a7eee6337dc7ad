use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] symqm::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("cannot access {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

/// Error as emitted on stderr.
#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub schema_version: u32,
    pub command: String,
    pub kind: &'static str,
    pub op: Option<&'static str>,
    pub message: String,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(symqm::Error::Input { .. }) => "input",
            CliError::Core(symqm::Error::Contract { .. }) => "contract",
            CliError::Config(_) | CliError::Json(_) => "config",
            CliError::Usage(_) => "usage",
            CliError::Io { .. } | CliError::Csv(_) => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind() {
            "contract" => 3,
            "io" => 4,
            _ => 2,
        }
    }

    pub fn record(&self, command: &str) -> ErrorRecord {
        let op = match self {
            CliError::Core(e) => Some(e.op()),
            _ => None,
        };
        ErrorRecord {
            schema_version: crate::report::SCHEMA_VERSION,
            command: command.to_string(),
            kind: self.kind(),
            op,
            message: self.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn config(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}
