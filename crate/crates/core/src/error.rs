use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every evaluation route in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the requested operation.
    #[error("{0}")]
    Domain(String),

    /// A series hit its term cap before the remainder bound met the tolerance.
    #[error("series did not converge within {terms} terms (remainder bound {bound:.3e})")]
    NonConvergence { terms: usize, bound: f64 },

    /// The smallest term of a divergent asymptotic expansion is above tolerance.
    #[error("asymptotic expansion cannot reach tolerance (smallest term {smallest:.3e})")]
    AsymptoticDivergence { smallest: f64 },

    /// An alternating series lost too many digits to cancellation.
    #[error("cancellation loss in alternating series (max partial sum / result = {ratio:.3e})")]
    CancellationLoss { ratio: f64 },

    /// A quadrature error estimate exceeds the requested accuracy.
    #[error("quadrature error estimate {estimate:.3e} exceeds tolerance {tol:.3e}")]
    Quadrature { estimate: f64, tol: f64 },

    /// No bracket with an interior point above both endpoints was found.
    #[error("no maximum bracket found in [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for argument/domain errors, false for numerical failures.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_))
    }
}
