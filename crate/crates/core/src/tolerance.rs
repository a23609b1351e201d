//! Numerical thresholds shared by every verification routine.

use std::sync::OnceLock;

/// Fourier coefficients below this modulus are dropped after every arithmetic op.
pub const DROP_TOL: f64 = 1e-14;

/// Default cap on the number of points of any verification or quadrature grid.
pub const DEFAULT_MAX_GRID: usize = 1 << 20;

/// Environment variable overriding [`DEFAULT_MAX_GRID`].
pub const MAX_GRID_ENV: &str = "FOLRHO_MAX_GRID";

/// Thresholds used by the verifying constructors and identity checks.
///
/// `scaled` multiplies the 1e-8 / 1e-9 class of thresholds by one factor; the
/// drop tolerance and the quadrature agreement threshold are fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Sup-norm below which a form coefficient counts as zero.
    pub vanish: f64,
    /// Residual allowed in least-squares integrability tests.
    pub integrability: f64,
    /// Residual allowed for form identities (Cartan formula, chain maps, pairings).
    pub identity: f64,
    /// Minimum modulus a certified denominator must keep on the grid.
    pub den_margin: f64,
    /// Agreement of successive trapezoid values before quadrature stops.
    pub quad_agree: f64,
    /// Maximum number of trapezoid nodes.
    pub quad_cap: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            vanish: 1e-9,
            integrability: 1e-9,
            identity: 1e-8,
            den_margin: 1e-6,
            quad_agree: 1e-10,
            quad_cap: 1 << 20,
        }
    }
}

impl Tolerances {
    pub fn scaled(factor: f64) -> Self {
        let d = Tolerances::default();
        Tolerances {
            vanish: d.vanish * factor,
            integrability: d.integrability * factor,
            identity: d.identity * factor,
            ..d
        }
    }
}

/// Grid cap from `FOLRHO_MAX_GRID`, read once per process.
pub fn max_grid_points() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_GRID_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v: &usize| v > 0)
            .unwrap_or(DEFAULT_MAX_GRID)
    })
}
