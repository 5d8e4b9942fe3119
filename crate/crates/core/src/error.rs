use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A result cannot be represented as a finite double.
    #[error("range error: {0}")]
    Range(String),

    #[error("series did not converge within {max_terms} terms at |z| = {modulus}")]
    NonConvergence { max_terms: usize, modulus: f64 },

    /// Caller-side misuse: wrong arity, short prefix, empty input.
    #[error("usage error: {0}")]
    Usage(String),

    /// A constructor precondition was violated; the message names it.
    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Every sampled point was skipped, so no verdict exists.
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

impl Error {
    /// True for errors caused by arithmetic rather than by bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Range(_)
                | Error::NonConvergence { .. }
                | Error::Degenerate(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
