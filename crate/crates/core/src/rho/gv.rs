use num_complex::Complex64;
use serde_json::{json, Value};

use super::rho_imag;
use crate::charforms::transgress_ch;
use crate::connections::{bott_partial_connection, CodimOneData, Connection, HermMetric};
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::tolerance::Tolerances;
use crate::trigcalc::complex_to_json;

/// Normalization of the Godbillon–Vey constant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GvConstant {
    /// `(−1)^{n+1}/((2πi)^{n+1} n!)`.
    Stated,
    /// `(−1)^{n+1}/((2πi)^{n+1} (n+1)!)`, what the transgression integral produces.
    Transgression,
}

/// `ρ^{iℝ} = const·∫ ω∧(dω)^n` constant for the chosen normalization.
pub fn gv_constant(n: usize, which: GvConstant) -> Complex64 {
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let mut fact = 1.0;
    let top = match which {
        GvConstant::Stated => n,
        GvConstant::Transgression => n + 1,
    };
    for k in 2..=top {
        fact *= k as f64;
    }
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    Complex64::new(sign, 0.0) / (two_pi_i.powu(n as u32 + 1) * fact)
}

fn check_n(n: usize) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::Domain(format!("n must be even, got {n}")));
    }
    Ok(())
}

fn omega_power(omega: &Form, n: usize) -> Form {
    let d = omega.d();
    (0..n).fold(omega.clone(), |acc, _| acc.wedge(&d))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GvIdentityReport {
    pub n: usize,
    /// `sup |ch̃_{2n+2}(d+ω, d−ω) − 2·const·ω∧(dω)^n|` with the stated constant.
    pub residual: f64,
    /// Same residual with the transgression constant.
    pub residual_transgression: f64,
    pub lhs_norm: f64,
    pub gv_norm: f64,
}

impl GvIdentityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "residual": self.residual,
            "residual_transgression": self.residual_transgression,
            "lhs_norm": self.lhs_norm,
            "gv_norm": self.gv_norm,
        })
    }
}

/// Compares `ch̃_{2n+2}(d+ω, d−ω)` with multiples of `ω∧(dω)^n`.
pub fn gv_chernweil_identity(omega: &Form, n: usize) -> Result<GvIdentityReport> {
    check_n(n)?;
    if omega.degree() != 1 || omega.rank() != 1 {
        return Err(Error::Domain("ω must be a scalar 1-form".into()));
    }
    let dim = omega.dim();
    if dim < 2 * n + 1 {
        return Err(Error::Domain(format!("T^{dim} is too small for n = {n}")));
    }
    let plus = Connection::new(omega.clone(), false)?;
    let minus = Connection::new(omega.neg(), false)?;
    let lhs = transgress_ch(&plus, &minus).entry(n as i32 + 1);
    let gv = omega_power(omega, n);
    let rhs = |w: GvConstant| gv.scale(gv_constant(n, w) * 2.0);
    Ok(GvIdentityReport {
        n,
        residual: lhs.residual(&rhs(GvConstant::Stated)),
        residual_transgression: lhs.residual(&rhs(GvConstant::Transgression)),
        lhs_norm: lhs.sup_norm(),
        gv_norm: gv.sup_norm(),
    })
}

/// The Godbillon–Vey form `ω∧(dω)^n` of codimension-one data on `T^{2n+1}`.
pub fn gv_form(cd: &CodimOneData, n: usize) -> Result<Form> {
    check_n(n)?;
    if cd.kappa().dim() != 2 * n + 1 {
        return Err(Error::DimensionMismatch(format!("GV form with n = {n} needs T^{}", 2 * n + 1)));
    }
    Ok(omega_power(cd.omega(), n))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GvResult {
    /// `ρ^{iℝ}` of the normal bundle with its Bott connection.
    pub value: Complex64,
    pub gv_integral: Complex64,
    pub predicted_stated: Complex64,
    pub predicted_transgression: Complex64,
}

impl GvResult {
    pub fn to_json(&self) -> Value {
        json!({
            "value": complex_to_json(self.value),
            "gv_integral": complex_to_json(self.gv_integral),
            "predicted_stated": complex_to_json(self.predicted_stated),
            "predicted_transgression": complex_to_json(self.predicted_transgression),
        })
    }
}

/// `ρ^{iℝ}` for `V = F⊥` with the Bott connection, alongside `const·∫GV`.
pub fn rho_imag_gv(cd: &CodimOneData, n: usize, tol: &Tolerances) -> Result<GvResult> {
    let gv = gv_form(cd, n)?;
    let pc = bott_partial_connection(cd, tol)?;
    let c = pc.base().clone();
    let value = rho_imag(&pc, &c, &HermMetric::identity(1), &c, tol)?;
    let gv_integral = gv.integrate_top_with_error(tol)?.0;
    Ok(GvResult {
        value,
        gv_integral,
        predicted_stated: gv_constant(n, GvConstant::Stated) * gv_integral,
        predicted_transgression: gv_constant(n, GvConstant::Transgression) * gv_integral,
    })
}
