//! Shared error type. Variants are grouped by how callers should react:
//! parse problems, domain/hypothesis violations, and convergence failures.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual input (edge list or graph6).
    #[error("parse error: {0}")]
    Parse(String),

    /// An argument was outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural hypothesis the operation relies on does not hold
    /// (disconnected input, diameter > 2, wrong component shapes, ...).
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    /// The secular bracket failed its sign checks; indicates the caller's
    /// configuration is outside the regime where the root is interior.
    #[error("secular bracket failure: {0}")]
    Bracket(String),

    /// Enumeration refused because the candidate space exceeds the cap.
    #[error("enumeration space {space:.4e} exceeds cap {cap:.4e}; raise the cap to proceed")]
    CapExceeded { space: f64, cap: f64 },

    /// Iteration budget exhausted before the tolerance was met.
    #[error("no convergence after {iterations} iterations (last estimate {last})")]
    NoConvergence { iterations: u64, last: f64 },

    /// Walk counts left 128-bit range.
    #[error("walk count overflow at step k = {k}")]
    WalkOverflow { k: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code this error maps to: 1 parse/I/O, 2 contract, 3 convergence.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 1,
            Error::Domain(_) | Error::Hypothesis(_) | Error::Bracket(_) => 2,
            Error::CapExceeded { .. } => 2,
            Error::NoConvergence { .. } | Error::WalkOverflow { .. } => 3,
        }
    }
}
