use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("adaptive quadrature did not converge ({evals} integrand evaluations, error estimate {estimate:e})")]
    QuadratureNotConverged { evals: usize, estimate: f64 },

    #[error("series did not converge within {terms} terms")]
    SeriesNotConverged { terms: usize },

    #[error("value overflows f64 (log-magnitude {log_magnitude})")]
    Overflow { log_magnitude: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("bulk approximation kernel is too small to divide by (|K#| = {0:e})")]
    DivisionNearZero(f64),

    #[error("one-point function vanishes at the conditioning point (R = {0:e})")]
    ZeroIntensity(f64),

    #[error("Gram matrix is not Hermitian (asymmetry {0:e})")]
    NonHermitianInput(f64),

    #[error("sampling budget exceeded: n * trials = {requested} > {limit}")]
    BudgetExceeded { requested: u128, limit: u128 },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// True for failures that come from numerics rather than bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNotConverged { .. }
                | Error::SeriesNotConverged { .. }
                | Error::Overflow { .. }
                | Error::DivisionNearZero(_)
        )
    }
}
