use thiserror::Error;

/// Failure modes shared by the special functions, eigenfunction sums and quadrature.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Gamma function evaluated at a non-positive integer.
    #[error("gamma function pole at x = {0}")]
    Pole(f64),
    /// Argument outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),
    /// Caller violated an operation precondition (wrong flux class, tau <= 0, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An infinite sum or iteration did not settle within its term budget.
    #[error("{what} did not converge within {limit} terms")]
    NonConvergence { what: &'static str, limit: usize },
    /// Adaptive quadrature exhausted its subdivision budget before reaching tolerance.
    #[error("quadrature did not reach tolerance {tol:e} (estimated error {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },
}

impl Error {
    /// True for errors caused by numerical failure rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::Quadrature { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
