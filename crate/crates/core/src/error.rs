use thiserror::Error;

/// Errors raised by the form calculus, the spectral routines and the WO_q algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("denominator not certified nonvanishing: min modulus {min:.3e} below margin {margin:.3e}")]
    VanishingDenominator { min: f64, margin: f64 },

    #[error("quadrature did not converge: value {value}, error estimate {estimate:.3e}")]
    QuadratureNonconvergence { value: f64, estimate: f64 },

    #[error("{what}: residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    Verification {
        what: String,
        residual: f64,
        tolerance: f64,
    },

    #[error("filtration violation: entry p = {p} only lies in F^{found}")]
    Filtration { p: i32, found: i32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("verification grid of {points} points exceeds cap {cap}")]
    GridCap { points: usize, cap: usize },

    #[error("basis of {size} monomials exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },
}

impl Error {
    pub(crate) fn verification(what: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Error::Verification {
            what: what.into(),
            residual,
            tolerance,
        }
    }

    /// True for failures of a numerical identity check (as opposed to malformed input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Verification { .. } | Error::QuadratureNonconvergence { .. } | Error::Filtration { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
