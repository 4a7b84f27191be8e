use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, column {col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("line {line}: catalytic reaction, species {species} appears on both sides")]
    Catalytic { line: usize, species: String },
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("enumeration cap exceeded: {what} needs {needed}, cap is {cap}")]
    EnumerationCap {
        what: &'static str,
        needed: usize,
        cap: usize,
    },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
