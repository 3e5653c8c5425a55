use thiserror::Error;

/// Errors raised by the library. Precondition failures are reported before any
/// numerical work starts; numerical-contract failures carry the measured value.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("grid error: {0}")]
    Grid(String),

    #[error("branch violation: {0}")]
    Branch(String),

    #[error("pole of the c-function at lambda = {0}")]
    Pole(String),

    #[error("truncation-dominated: {what} (tail estimate {tail:e} exceeds tolerance {tol:e})")]
    TruncationDominated { what: String, tail: f64, tol: f64 },

    #[error("non-integrable spectral data: tail mass ratio {ratio:e} exceeds {tol:e}")]
    NonIntegrable { ratio: f64, tol: f64 },

    #[error("linear solve failed: {0}")]
    Solve(String),
}

impl Error {
    /// True for failures of a numerical contract (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::TruncationDominated { .. } | Error::NonIntegrable { .. } | Error::Solve(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
