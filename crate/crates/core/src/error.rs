//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum QError {
    #[error("division by zero in Q(v)")]
    DivisionByZero,
    #[error("rank mismatch: expected n = {expected}, got n = {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("value is not a rational function of q alone (odd powers of v remain)")]
    NotInQ,
    #[error("evaluation hit a zero denominator")]
    EvalDenominatorZero,
    #[error("series does not terminate for the given parameters")]
    NonTerminating,
    #[error("zero denominator in a series partial sum")]
    SeriesDenominatorZero,
    #[error("inconsistent linear system: {0}")]
    LinearSolve(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
}

pub type Result<T> = std::result::Result<T, QError>;
