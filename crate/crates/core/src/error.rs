use thiserror::Error;

/// Errors raised by the analysis library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A constructor or operation received a value outside its domain.
    #[error("{name} must be {constraint}, got {value}")]
    InvalidParameter {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },

    /// A coupling constant required by the operation was not supplied.
    #[error("coupling `{0}` is required but was not set")]
    MissingCoupling(&'static str),

    /// Adaptive quadrature hit its subdivision limit before meeting tolerance.
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (result {result:e}, error estimate {error:e})"
    )]
    NonConvergence {
        result: f64,
        error: f64,
        subdivisions: usize,
    },

    /// The integrand returned NaN or an infinity.
    #[error("integrand is not finite at x = {x:e}")]
    NonFiniteIntegrand { x: f64 },

    #[error("invalid range: {0}")]
    InvalidRange(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, constraint: &'static str, value: f64) -> Self {
        Error::InvalidParameter {
            name,
            constraint,
            value,
        }
    }

    /// True for failures of the numerical machinery rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. } | Error::NonFiniteIntegrand { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
