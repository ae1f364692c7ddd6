use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },
    /// Series parameters are invalid (e.g. a non-positive integer lower parameter).
    #[error("invalid parameters: {0}")]
    Parameter(String),
    /// The result is not representable in double precision.
    #[error("overflow in {0}")]
    Overflow(&'static str),
    /// A series or iteration did not meet its stopping rule within its budget.
    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence {
        what: &'static str,
        iterations: usize,
    },
    /// Invalid sweep or verification configuration.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}
