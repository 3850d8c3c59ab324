//! Crate-wide error type.

use thiserror::Error;

/// Failures raised by the engine and the oracles.
///
/// The CLI maps [`Error::is_internal`] to exit status 2 and everything else to 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("non-singular block-diagonal violated: diagonal block {0} is singular")]
    SingularBlock(usize),
    #[error("missing nu value for partition {0}")]
    MissingNu(String),
    #[error("enumeration refused: {0}")]
    Infeasible(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::SingularBlock(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
