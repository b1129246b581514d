use thiserror::Error;

/// Errors raised by numeric evaluation, sampling and verification.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{what} did not converge within {budget} terms")]
    NonConvergence { what: &'static str, budget: usize },
    #[error("quadrature failed for {what}: estimated error {abs_err:e} on value {value:e}")]
    Quadrature {
        what: &'static str,
        value: f64,
        abs_err: f64,
    },
    #[error("s = {s} lies outside the Mellin strip ({lo}, {hi})")]
    StripViolation { s: f64, lo: f64, hi: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("probe fit failed: {0}")]
    FitFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// Returns `Ok(v)` when `v` is finite, a domain error naming `what` otherwise.
pub(crate) fn finite(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain(format!("{what} produced a non-finite value")))
    }
}
