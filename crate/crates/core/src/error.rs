use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arguments outside the region of convergence: {0}")]
    OutOfRegion(String),

    #[error("series not converged after {terms} terms (partial sum {partial}, tail estimate {tail:e})")]
    MaxTermsExceeded { terms: u64, partial: f64, tail: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole in hypergeometric term: lower parameter vanishes at k = {k}, m = {m}")]
    PoleInTerm { k: u64, m: u64 },

    #[error("edge extrapolation stalled: series at theta = {theta} exhausted {terms} terms")]
    SlowConvergence { theta: f64, terms: u64 },

    #[error("quadrature tolerance not reached: estimate {value}, error estimate {error:e}")]
    ToleranceNotReached { value: f64, error: f64 },

    #[error("parameters are not zero-balanced: numerator sum {numer} vs denominator sum {denom}")]
    NotZeroBalanced { numer: f64, denom: f64 },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for errors caused by a budget running out rather than by bad input.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(
            self,
            Error::MaxTermsExceeded { .. }
                | Error::SlowConvergence { .. }
                | Error::ToleranceNotReached { .. }
        )
    }
}
