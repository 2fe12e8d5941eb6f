use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("invalid value for {key}: {msg}")]
    Value { key: String, msg: String },
    #[error("inline problem: {0}")]
    Inline(String),
    #[error("malformed trace: {0}")]
    Trace(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Engine(#[from] dcakit_core::engine::EngineError),
    #[error(transparent)]
    Zoo(#[from] dcakit_core::zoo::ZooError),
    #[error(transparent)]
    Rate(#[from] dcakit_core::rates::RateError),
    #[error(transparent)]
    Diag(#[from] dcakit_core::diagnostics::DiagError),
}

impl CliError {
    pub fn value(key: &str, msg: impl Into<String>) -> Self {
        CliError::Value { key: key.to_string(), msg: msg.into() }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}
