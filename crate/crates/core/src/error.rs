use std::fmt;

/// Errors surfaced by the numerical layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    Domain(String),
    /// An iterative scheme (quadrature refinement, series acceleration)
    /// failed to stabilize within its budget.
    NonConvergence(String),
    /// A sphere grid is too coarse for the requested degree.
    Resolution(String),
    /// A hard internal consistency check failed.
    Invariant(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NonConvergence(msg) => write!(f, "did not converge: {msg}"),
            Error::Resolution(msg) => write!(f, "grid resolution error: {msg}"),
            Error::Invariant(msg) => write!(f, "invariant violated: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
