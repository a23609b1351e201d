//! The invariant ρ: spectral assembly on the circle, the imaginary part on
//! foliated tori, the Godbillon–Vey identity, relative e-invariants and the
//! bordism integrand.

mod gv;
mod relative;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::{json, Value};

pub use gv::{gv_chernweil_identity, gv_constant, gv_form, rho_imag_gv, GvConstant, GvIdentityReport, GvResult};
pub use relative::{bordism_integrand, covering_matrix, e_relative, pullback_partial};

use crate::charforms::{ahat_form, chern_character, transgress_ahat, transgress_ch};
use crate::connections::{extension_residual, Connection, HermMetric, PartialConnection};
use crate::error::{Error, Result};
use crate::forms::{Form, GradedFormSequence};
use crate::spectral::{dirac_s1_spectrum, eta_closed, eta_numeric, frac, EtaMethod, EtaResult};
use crate::tolerance::Tolerances;
use crate::trigcalc::{complex_to_json, TrigScalar};

/// Flat real connection `∇^s` on the stabilized bundle `ℝ^m` induced by a framing.
#[derive(Clone, Debug, PartialEq)]
pub struct FramingData {
    conn: Connection,
    flatness: f64,
}

impl FramingData {
    pub fn new(conn: Connection, tol: &Tolerances) -> Result<FramingData> {
        if !conn.is_real() {
            return Err(Error::Domain("framing connection must be real".into()));
        }
        let flatness = conn.curvature().sup_norm();
        if flatness >= tol.vanish {
            return Err(Error::verification("flatness of the framing connection", flatness, tol.vanish));
        }
        Ok(FramingData { conn, flatness })
    }

    /// The trivial connection on `ℝ^m`.
    pub fn trivial(dim: usize, m: usize) -> FramingData {
        FramingData {
            conn: Connection::trivial(dim, m),
            flatness: 0.0,
        }
    }

    pub fn connection(&self) -> &Connection {
        &self.conn
    }

    pub fn rank(&self) -> usize {
        self.conn.rank()
    }

    pub fn dim(&self) -> usize {
        self.conn.dim()
    }

    pub fn flatness_residual(&self) -> f64 {
        self.flatness
    }

    pub fn to_json(&self) -> Value {
        self.conn.to_json()
    }

    pub fn from_json(v: &Value, tol: &Tolerances) -> Result<FramingData> {
        FramingData::new(Connection::from_json(v)?, tol)
    }
}

/// Terms entering `ρ = ξ − ∫Ã(LC,s)∧ch(∇) + ∫Â(∇^{LC})∧ch̃(∇,∇^u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RhoProvenance {
    pub xi: f64,
    pub correction_framing: Complex64,
    pub correction_unitarization: Complex64,
    /// `Â(∇^{LC})`; the constant 1 for the flat torus metric.
    pub ahat_lc: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RhoResult {
    /// Representative of ℂ/ℤ with real part in `[0,1)`.
    pub value: Complex64,
    pub real_part: f64,
    pub imag_part: f64,
    pub provenance: RhoProvenance,
    pub eta: Option<EtaResult>,
}

impl RhoResult {
    pub fn to_json(&self) -> Value {
        json!({
            "value": complex_to_json(self.value),
            "real_part": self.real_part,
            "imag_part": self.imag_part,
            "provenance": {
                "xi": self.provenance.xi,
                "correction_framing": complex_to_json(self.provenance.correction_framing),
                "correction_unitarization": complex_to_json(self.provenance.correction_unitarization),
                "ahat_lc": complex_to_json(self.provenance.ahat_lc),
            },
            "eta": self.eta.as_ref().map(|e| serde_json::to_value(e).expect("η result serializes")),
        })
    }
}

/// Reduces the real part to `[0,1)`.
pub fn reduce_mod_z(z: Complex64) -> Complex64 {
    Complex64::new(frac(z.re), z.im)
}

/// `Σ a_i ∧ b_j` over the pairs of entries whose degrees add up to `dim`.
pub fn top_pairing(a: &GradedFormSequence, b: &GradedFormSequence) -> Result<Form> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch("pairing sequences on different tori".into()));
    }
    let n = a.dim();
    let mut acc = Form::zero(n, n, 1);
    for fa in a.entries().values() {
        for fb in b.entries().values() {
            if fa.degree() + fb.degree() == n {
                acc = acc.add(&fa.wedge(fb));
            }
        }
    }
    Ok(acc)
}

pub(crate) fn integrate_pairing(a: &GradedFormSequence, b: &GradedFormSequence, tol: &Tolerances) -> Result<Complex64> {
    Ok(top_pairing(a, b)?.integrate_top_with_error(tol)?.0)
}

/// The two characteristic-form corrections for a bundle `(c, h)` and a
/// framing on a flat torus, together with `Â(∇^{LC})` integrated against 1.
pub fn rho_corrections(
    c: &Connection,
    h: &HermMetric,
    framing: &FramingData,
    tol: &Tolerances,
) -> Result<(Complex64, Complex64, Complex64)> {
    let dim = c.dim();
    if framing.dim() != dim || h.rank() != c.rank() {
        return Err(Error::DimensionMismatch("bundle, metric and framing must match".into()));
    }
    let lc = Connection::trivial(dim, framing.rank());
    let at = transgress_ahat(&lc, framing.connection())?;
    let framing_term = integrate_pairing(&at.seq, &chern_character(c).seq, tol)?;
    let ahat_lc = ahat_form(&lc)?;
    let unitary = c.unitarize(h)?;
    let kt = transgress_ch(c, &unitary);
    let unit_term = integrate_pairing(&ahat_lc.seq, &kt.seq, tol)?;
    Ok((framing_term, unit_term, ahat_lc.entry(0).coeff(0).eval(&vec![0.0; dim])))
}

/// Assembles ρ from a supplied ξ-invariant and the computed corrections.
pub fn rho_from_xi(
    xi: f64,
    c: &Connection,
    h: &HermMetric,
    framing: &FramingData,
    tol: &Tolerances,
) -> Result<RhoResult> {
    let (cf, cu, ahat_lc) = rho_corrections(c, h, framing, tol)?;
    let value = reduce_mod_z(Complex64::new(xi, 0.0) - cf + cu);
    Ok(RhoResult {
        value,
        real_part: value.re,
        imag_part: value.im,
        provenance: RhoProvenance {
            xi,
            correction_framing: cf,
            correction_unitarization: cu,
            ahat_lc,
        },
        eta: None,
    })
}

/// Flat line bundle `∇(r) = d − 2πi r dx` on the circle, holonomy `e^{2πir}`.
pub fn circle_bundle(r: f64) -> Connection {
    let a = Form::scalar_one_form(vec![TrigScalar::constant(1, Complex64::new(0.0, -2.0 * PI * r))]);
    Connection::new(a, false).expect("a 1-form is a connection form")
}

/// ρ on the circle with the bounding spin structure and `F = TS¹`.
pub fn rho_s1(r: f64, framing: &FramingData, method: EtaMethod, tol: &Tolerances) -> Result<RhoResult> {
    if framing.dim() != 1 {
        return Err(Error::DimensionMismatch("circle framing must live on T¹".into()));
    }
    let spec = dirac_s1_spectrum(r, true)?;
    let eta = match method {
        EtaMethod::ClosedForm => eta_closed(&spec)?,
        EtaMethod::ZetaNumeric => eta_numeric(&spec)?,
    };
    let mut res = rho_from_xi(eta.xi, &circle_bundle(r), &HermMetric::identity(1), framing, tol)?;
    for (what, v) in [
        ("framing correction on the circle", res.provenance.correction_framing),
        ("unitarization correction on the circle", res.provenance.correction_unitarization),
    ] {
        if v.norm() >= 1e-12 {
            return Err(Error::verification(what, v.norm(), 1e-12));
        }
    }
    res.eta = Some(eta);
    Ok(res)
}

/// `ρ^{iℝ} = ∫_M Â(∇^{F⊥})∧ch̃(∇,∇*)/2` for an extension `c` of a flat
/// partial connection.
pub fn rho_imag(
    pc: &PartialConnection,
    c: &Connection,
    h: &HermMetric,
    cf: &Connection,
    tol: &Tolerances,
) -> Result<Complex64> {
    let dim = c.dim();
    if dim % 2 == 0 {
        return Err(Error::Domain(format!("ρ^iℝ needs an odd-dimensional torus, got T^{dim}")));
    }
    if cf.dim() != dim || pc.foliation().dim() != dim {
        return Err(Error::DimensionMismatch("bundle, normal connection and foliation on different tori".into()));
    }
    let res = extension_residual(c, pc);
    if res >= tol.vanish {
        return Err(Error::verification("extension of the partial connection", res, tol.vanish));
    }
    let ahat = ahat_form(cf)?;
    let kt = transgress_ch(c, &c.adjoint(h)?);
    let v = integrate_pairing(&ahat.seq, &kt.seq, tol)? * 0.5;
    if v.re.abs() >= tol.vanish {
        return Err(Error::verification("imaginarity of ρ^iℝ", v.re.abs(), tol.vanish));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{poly_one_form, Foliation};
    use crate::spectral::mod_one_distance;
    use crate::trigcalc::TrigPoly;

    #[test]
    fn circle_values() {
        let tol = Tolerances::default();
        let s = FramingData::trivial(1, 2);
        for (r, want) in [(0.0, 0.0), (0.3, 0.7), (0.5, 0.5)] {
            let res = rho_s1(r, &s, EtaMethod::ClosedForm, &tol).unwrap();
            assert!(mod_one_distance(res.real_part, want) < 1e-12, "r = {r}: {}", res.real_part);
            assert_eq!(res.imag_part, 0.0);
            assert_eq!(res.provenance.ahat_lc, Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn framing_must_be_flat() {
        let a = Form::coordinate(2, &[0]).wedge(&Form::function(crate::trigcalc::MatScalar::poly_times(
            &TrigPoly::sin(2, &[0, 1]),
            &nalgebra::DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]).map(|x: f64| Complex64::new(x, 0.0)),
        )));
        let c = Connection::new(a, true).unwrap();
        assert!(FramingData::new(c, &Tolerances::default()).is_err());
    }

    #[test]
    fn circle_imaginary_part() {
        let tol = Tolerances::default();
        let (a, b) = (0.7, -0.4);
        let c = Connection::new(Form::scalar_one_form(vec![TrigScalar::constant(1, Complex64::new(a, b))]), false).unwrap();
        let pc = PartialConnection::new(Connection::trivial(1, 1), Foliation::minimal(1), &tol).unwrap();
        let v = rho_imag(&pc, &c, &HermMetric::identity(1), &Connection::trivial(1, 1), &tol).unwrap();
        assert!((v - Complex64::new(0.0, a / (2.0 * PI))).norm() < 1e-12);
    }

    #[test]
    fn parity_and_extension_errors() {
        let tol = Tolerances::default();
        let pc = PartialConnection::new(Connection::trivial(2, 1), Foliation::maximal(2), &tol).unwrap();
        let c = Connection::trivial(2, 1);
        assert!(rho_imag(&pc, &c, &HermMetric::identity(1), &c, &tol).is_err());
        let pc = PartialConnection::new(Connection::trivial(3, 1), Foliation::coordinate(3, &[0]), &tol).unwrap();
        let c = Connection::new(poly_one_form(vec![TrigPoly::real(3, 0.3), TrigPoly::zero(3), TrigPoly::zero(3)]), true).unwrap();
        assert!(matches!(
            rho_imag(&pc, &c, &HermMetric::identity(1), &Connection::trivial(3, 1), &tol),
            Err(Error::Verification { .. })
        ));
    }
}
