use thiserror::Error;

/// Errors signalled by the numerical routines.
///
/// Violated inequalities are never errors; certificates report them through
/// their `satisfied` flag.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("branch error: {0}")]
    Branch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("insufficient resolution: {0}")]
    Resolution(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("no root found: {0}")]
    NoRoot(String),
    #[error("expected exactly one root inside the contour, counted {0}")]
    MultiRoot(i64),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
