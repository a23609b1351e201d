//! The truncated Weil algebra `WO_q`, its rational cohomology, the evaluation
//! map `Δ` into forms and the universal class `U`.

mod algebra;
mod cohomology;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

pub use algebra::{basis, mul_monomials, wo_d, wo_mul, Monomial, QPrime, WOElement, WoConfig};
pub use cohomology::{wo_cohomology, wo_cohomology_with, CohomologyReport, EulerCheck, DEFAULT_BASIS_CAP};

use crate::charforms::{ahat_in_ch, chern_character, kamber_tondeur, transgress_ch};
use crate::connections::{Connection, HermMetric};
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::tolerance::Tolerances;

fn i_pow(n: u32) -> Complex64 {
    Complex64::new(0.0, 1.0).powu(n)
}

/// Form-level images of the generators under `Δ_{(∇,h)}`.
pub struct DeltaGenerators {
    dim: usize,
    /// `(i, ch̃_{2i}(∇,∇*)/(2iⁱ))` for the configured odd `i`.
    tilde: Vec<(u32, Form)>,
    /// `ch_{2k}(∇)/iᵏ`, `k = 1..=q`.
    c: Vec<Form>,
}

impl DeltaGenerators {
    pub fn new(config: WoConfig, cf: &Connection, h: &HermMetric) -> Result<DeltaGenerators> {
        if !cf.is_real() {
            return Err(Error::Domain("Δ needs a real connection on the normal bundle".into()));
        }
        let kt = transgress_ch(cf, &cf.adjoint(h)?);
        let ch = chern_character(cf);
        let tilde = config
            .tilde_indices()
            .into_iter()
            .map(|i| (i, kt.entry(i as i32).scale(Complex64::new(0.5, 0.0) / i_pow(i))))
            .collect();
        let c = (1..=config.q).map(|k| ch.entry(k as i32).scale(i_pow(k).inv())).collect();
        Ok(DeltaGenerators { dim: cf.dim(), tilde, c })
    }

    pub fn tilde(&self, i: u32) -> Option<&Form> {
        self.tilde.iter().find(|(j, _)| *j == i).map(|(_, f)| f)
    }

    pub fn c(&self, k: u32) -> &Form {
        &self.c[k as usize - 1]
    }

    fn monomial(&self, m: &Monomial) -> Form {
        let mut f = Form::one(self.dim);
        for &i in m.tilde() {
            f = f.wedge(self.tilde(i).expect("configured generator"));
        }
        for (k, &e) in m.c().iter().enumerate() {
            for _ in 0..e {
                f = f.wedge(&self.c[k]);
            }
        }
        f
    }

    /// `Δ(e)` for a homogeneous element of degree at most `dim M`.
    pub fn apply(&self, e: &WOElement) -> Result<Form> {
        if e.is_zero() {
            return Ok(Form::zero(self.dim, 0, 1));
        }
        let deg = e
            .degree()
            .ok_or_else(|| Error::Domain("Δ is applied to homogeneous elements".into()))? as usize;
        if deg > self.dim {
            return Err(Error::DegreeMismatch {
                expected: self.dim,
                found: deg,
            });
        }
        let mut out = Form::zero(self.dim, deg, 1);
        for (m, c) in e.terms() {
            let w = c.to_f64().unwrap_or(f64::NAN);
            out = out.add(&self.monomial(m).scale(Complex64::new(w, 0.0)));
        }
        Ok(out)
    }
}

/// `Δ_{(∇^{F⊥},h)}(e)`.
pub fn delta_map(e: &WOElement, cf: &Connection, h: &HermMetric) -> Result<Form> {
    DeltaGenerators::new(e.config(), cf, h)?.apply(e)
}

/// `U = [(Σ_{i odd ≤ q′} (−1)^{(i+1)/2} c̃_i)·A(c_1,…,c_q)]_{dim M}`, verified to be a cycle.
pub fn universal_class(config: WoConfig, dim_m: u32) -> Result<WOElement> {
    if dim_m % 2 == 0 || 2 * config.q >= dim_m {
        return Err(Error::Domain(format!(
            "U needs odd dim M > 2q, got dim M = {dim_m}, q = {}",
            config.q
        )));
    }
    let a = ahat_in_ch(config.q, config.truncation);
    let mut a_wo = WOElement::zero(config);
    for (exps, c) in a.terms() {
        let mut e = exps.clone();
        e.resize(config.q as usize, 0);
        a_wo = a_wo.add(&WOElement::monomial(config, Monomial::new(vec![], e), c.clone()));
    }
    let mut sum = WOElement::zero(config);
    for i in config.tilde_indices() {
        let t = WOElement::tilde(config, i).expect("configured generator");
        let sign = if ((i + 1) / 2) % 2 == 0 { 1 } else { -1 };
        sum = sum.add(&t.scale(&BigRational::from_integer(sign.into())));
    }
    let u = sum.mul(&a_wo).homogeneous_part(dim_m);
    let du = u.d();
    if !du.is_zero() {
        return Err(Error::verification("dU = 0", du.terms().len() as f64, 0.0));
    }
    Ok(u)
}

/// `i·∫_M Δ(U)`.
pub fn delta_pairing(u: &WOElement, cf: &Connection, h: &HermMetric, tol: &Tolerances) -> Result<Complex64> {
    let f = delta_map(u, cf, h)?;
    if f.degree() != f.dim() {
        if u.is_zero() {
            return Ok(Complex64::zero());
        }
        return Err(Error::DegreeMismatch {
            expected: f.dim(),
            found: f.degree(),
        });
    }
    Ok(Complex64::new(0.0, 1.0) * f.integrate_top_with_error(tol)?.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct KtRelationReport {
    pub p: u32,
    /// Sup-norm of `ch̃_{2p}(∇,∇*) − 2iᵖΔ(c̃_p)`.
    pub form_residual: f64,
    /// Largest difference of the pairings with the constant closed forms.
    pub period_residual: f64,
    pub lhs_norm: f64,
}

impl KtRelationReport {
    pub fn residual(&self) -> f64 {
        self.form_residual.max(self.period_residual)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "residual": self.residual(),
            "form_residual": self.form_residual,
            "period_residual": self.period_residual,
            "lhs_norm": self.lhs_norm,
        })
    }
}

/// Compares the Kamber–Tondeur form with `2iᵖΔ(c̃_p)` for odd `p`.
pub fn kt_class_relation(p: u32, cf: &Connection, h: &HermMetric, tol: &Tolerances) -> Result<KtRelationReport> {
    if p % 2 == 0 {
        return Err(Error::Domain(format!("p must be odd, got {p}")));
    }
    if 2 * p as usize > cf.dim() + 1 {
        return Err(Error::Domain(format!("degree {} exceeds dim M = {}", 2 * p - 1, cf.dim())));
    }
    let lhs = kamber_tondeur(cf, h, p as usize, tol)?;
    let config = WoConfig::new(p);
    let ct = WOElement::tilde(config, p).expect("p is odd and equals q");
    let rhs = delta_map(&ct, cf, h)?.scale(i_pow(p) * 2.0);
    let (pl, pr) = (lhs.periods(tol)?, rhs.periods(tol)?);
    let period_residual = pl.iter().zip(&pr).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    Ok(KtRelationReport {
        p,
        form_residual: lhs.residual(&rhs),
        period_residual,
        lhs_norm: lhs.sup_norm(),
    })
}
