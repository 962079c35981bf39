use thiserror::Error;

/// Errors raised by the evaluators, quadrature engine and inequality checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the function's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Result would overflow an f64.
    #[error("overflow: {0}")]
    Overflow(String),
    /// Evaluation requested exactly at a non-integrable or log singularity.
    #[error("singularity: {0}")]
    Singularity(String),
    /// Achieved accuracy too far from the requested tolerance.
    #[error("range error: achieved {achieved:e} exceeds 10x requested {requested:e}")]
    Range { requested: f64, achieved: f64 },
    /// Series, quadrature or chunk summation did not converge within budget.
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    /// An inequality check was asked to run outside its hypotheses.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    /// Sweep referred to a check that is not registered.
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    /// Malformed grid specification.
    #[error("bad grid: {0}")]
    Grid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
