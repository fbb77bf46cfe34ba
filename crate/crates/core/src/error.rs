use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite input in {0}")]
    NonFiniteInput(&'static str),

    #[error("insufficient history: need {needed} known samples, have {available}")]
    InsufficientHistory { needed: usize, available: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("query {query} lies outside the knot range [{min}, {max}]; only LLI extrapolates")]
    ExtrapolationUnsupported { query: f64, min: f64, max: f64 },

    #[error("singular linear system in {0}")]
    SingularSystem(&'static str),

    #[error("invalid knots: {0}")]
    InvalidKnots(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown method `{0}` (expected one of lli, linear, spline, makima, pchip, rbf, kriging)")]
    UnknownMethod(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(values: &[f64], what: &'static str) -> Result<()> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFiniteInput(what))
    }
}
