use thiserror::Error;

/// Errors raised by the exact engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The request violates a precondition (bad ranges, non-coprime data, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A denominator or divisor vanished identically.
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    /// A jet coefficient was requested beyond the truncation cap.
    #[error("multidegree {requested:?} exceeds jet cap {cap:?}")]
    AboveCap { requested: Vec<u32>, cap: Vec<u32> },
    /// Something went wrong inside an evaluation that should not have.
    #[error("computation failed: {0}")]
    Computation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
