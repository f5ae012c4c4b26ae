use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] ftqc_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0} acceptance criteria failed")]
    Verification(usize),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(ftqc_core::Error::Io(_)) => "io",
            CliError::Core(_) => "validation",
            CliError::Io { .. } => "io",
            CliError::Json(_) => "json",
            CliError::Csv(_) => "csv",
            CliError::Usage(_) => "usage",
            CliError::Verification(_) => "verification",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Machine-readable failure written to stderr.
#[derive(Serialize)]
pub struct ErrorRecord<'a> {
    pub schema: u32,
    pub error: &'a str,
    pub message: String,
}
