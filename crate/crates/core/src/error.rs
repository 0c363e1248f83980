use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("forward difference of order {order} needs {needed} values, got {got}")]
    SequenceTooShort {
        order: usize,
        needed: usize,
        got: usize,
    },

    #[error("{what} = {index} is outside 0..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: i64,
        max: i64,
    },

    #[error("N must be even and at least 2, got {0}")]
    InvalidSize(usize),

    #[error("p must lie strictly between 0 and 1, got {0}")]
    InvalidProbability(BigRational),

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(BigRational),

    #[error("scan step must be positive, got {0}")]
    InvalidStep(BigRational),

    #[error("no critical point found in (0, {limit}] for N = {size}")]
    NoCriticalPoint { size: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
