//! Chern–Weil forms of connections, their transgressions along the cylinder,
//! Kamber–Tondeur forms and the exact genus machinery behind Â.

mod chern;
mod genus;
mod ratpoly;

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Value};

pub use chern::{ahat_from_pontryagin, ch_components, chern_from_ch, pontryagin_from_chern};
pub use genus::{ahat_in_ch, ahat_log_coeffs, power_sums_in_elementary, GenusTable, Truncation};
pub use ratpoly::{factorial, rat, series_log, RatPoly};

use crate::connections::{extension_residual, interpolate, Connection, HermMetric, PartialConnection, TConnection};
use crate::error::{Error, Result};
use crate::forms::{Form, GradedFormSequence, TForm};
use crate::tolerance::Tolerances;

/// What a [`CharForm`] represents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharKind {
    ChernCharacter,
    Chern,
    Pontryagin,
    AHat,
    ChTransgression,
    AHatTransgression,
}

impl CharKind {
    pub fn label(self) -> &'static str {
        match self {
            CharKind::ChernCharacter => "ch",
            CharKind::Chern => "c",
            CharKind::Pontryagin => "p",
            CharKind::AHat => "ahat",
            CharKind::ChTransgression => "ch_tilde",
            CharKind::AHatTransgression => "ahat_tilde",
        }
    }
}

/// Graded characteristic form tagged with its kind and the connections it came from.
///
/// Entry `p` of the sequence has form degree `total_degree + 2p`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharForm {
    pub kind: CharKind,
    pub seq: GradedFormSequence,
    pub origin: Vec<String>,
}

impl CharForm {
    /// Component of form degree `k` (zero if absent).
    pub fn degree(&self, k: usize) -> Form {
        self.seq.degree_component(k)
    }

    pub fn entry(&self, p: i32) -> Form {
        self.seq.entry(p)
    }

    /// All components in increasing degree.
    pub fn components(&self) -> Vec<Form> {
        let dim = self.seq.dim() as i32;
        let t = self.seq.total_degree();
        let lo = (-t).div_euclid(2) + i32::from((-t).rem_euclid(2) != 0);
        (lo..)
            .take_while(|p| t + 2 * p <= dim)
            .map(|p| self.seq.entry(p))
            .collect()
    }

    /// Largest sup-norm of `d` applied to any component.
    pub fn closedness_residual(&self) -> f64 {
        self.seq.entries().values().map(|f| f.d().sup_norm()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        json!({"kind": self.kind.label(), "origin": self.origin, "sequence": self.seq.to_json()})
    }
}

fn periodic(kind: CharKind, dim: usize, total: i32, comps: Vec<(i32, Form)>, origin: Vec<String>) -> CharForm {
    let entries: BTreeMap<i32, Form> = comps.into_iter().collect();
    CharForm {
        kind,
        seq: GradedFormSequence::periodic(dim, total, entries).expect("characteristic form degrees are consistent"),
        origin,
    }
}

fn even_sequence(kind: CharKind, dim: usize, comps: Vec<Form>, origin: Vec<String>) -> CharForm {
    periodic(
        kind,
        dim,
        0,
        comps.into_iter().enumerate().map(|(p, f)| (p as i32, f)).collect(),
        origin,
    )
}

fn require_real(c: &Connection, what: &str) -> Result<()> {
    if c.is_real() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} requires a real connection")))
    }
}

/// `ch(∇) = Σ_p tr((−R/2πi)^p)/p!`.
pub fn chern_character(c: &Connection) -> CharForm {
    even_sequence(CharKind::ChernCharacter, c.dim(), ch_components(&c.curvature()), vec!["∇".into()])
}

/// `ch⁻(∇)`: the Chern character of an extension of a flat partial
/// connection, with `ch_{2p} ∈ F^p` verified.
pub fn chern_character_filtered(c: &Connection, pc: &PartialConnection, tol: &Tolerances) -> Result<CharForm> {
    let res = extension_residual(c, pc);
    if res >= tol.vanish {
        return Err(Error::verification("extension of the partial connection", res, tol.vanish));
    }
    let ch = chern_character(c);
    Ok(CharForm {
        seq: GradedFormSequence::negative(c.dim(), 0, ch.seq.entries().clone(), pc.foliation(), tol.vanish)?,
        ..ch
    })
}

/// Chern forms `c_k`, with `1 + c_1 + c_2 + … = det(1 − R/2πi)`.
pub fn chern_forms(c: &Connection) -> CharForm {
    let ch = ch_components(&c.curvature());
    even_sequence(CharKind::Chern, c.dim(), chern_from_ch(&ch, c.rank()), vec!["∇".into()])
}

/// `p_i = (−1)^i c_{2i}`, placed in degree `4i`.
pub fn pontryagin_forms(c: &Connection) -> Result<CharForm> {
    require_real(c, "Pontryagin forms")?;
    let ch = ch_components(&c.curvature());
    let p = pontryagin_from_chern(&chern_from_ch(&ch, c.rank()));
    Ok(periodic(
        CharKind::Pontryagin,
        c.dim(),
        0,
        p.into_iter().enumerate().map(|(i, f)| (2 * i as i32, f)).collect(),
        vec!["∇".into()],
    ))
}

fn ahat_list<X: crate::forms::FormAlgebra>(r: &X, rank: usize) -> Vec<X> {
    let ch = ch_components(r);
    ahat_from_pontryagin(&pontryagin_from_chern(&chern_from_ch(&ch, rank)))
}

/// `Â(∇) = 1 + Â_4 + Â_8 + …` evaluated on the Pontryagin forms.
pub fn ahat_form(c: &Connection) -> Result<CharForm> {
    require_real(c, "the Â form")?;
    let a = ahat_list(&c.curvature(), c.rank());
    Ok(periodic(
        CharKind::AHat,
        c.dim(),
        0,
        a.into_iter().enumerate().map(|(k, f)| (2 * k as i32, f)).collect(),
        vec!["∇".into()],
    ))
}

/// `Â⁻(∇)` for an extension of a flat partial connection, `Â_{4k} ∈ F^{2k}` verified.
pub fn ahat_form_filtered(c: &Connection, pc: &PartialConnection, tol: &Tolerances) -> Result<CharForm> {
    let res = extension_residual(c, pc);
    if res >= tol.vanish {
        return Err(Error::verification("extension of the partial connection", res, tol.vanish));
    }
    let a = ahat_form(c)?;
    Ok(CharForm {
        seq: GradedFormSequence::negative(c.dim(), 0, a.seq.entries().clone(), pc.foliation(), tol.vanish)?,
        ..a
    })
}

fn fiber_sequence(kind: CharKind, dim: usize, comps: Vec<(i32, TForm)>, origin: Vec<String>) -> CharForm {
    periodic(
        kind,
        dim,
        -1,
        comps
            .into_iter()
            .filter(|(p, _)| *p >= 1)
            .map(|(p, f)| (p, f.fiber_integrate()))
            .collect(),
        origin,
    )
}

/// `ch̃` along a given path of connections: `∫_{I×M/M} ch(∇̃)`.
pub fn transgress_ch_path(tc: &TConnection) -> CharForm {
    let ch = ch_components(&tc.curvature());
    fiber_sequence(
        CharKind::ChTransgression,
        tc.restrict(0.0).dim(),
        ch.into_iter().enumerate().map(|(p, f)| (p as i32, f)).collect(),
        vec!["∇₁".into(), "∇₀".into()],
    )
}

/// `ch̃(∇₁,∇₀)` with `d ch̃ = ch(∇₁) − ch(∇₀)`, via the linear path from `∇₀` to `∇₁`.
pub fn transgress_ch(c1: &Connection, c0: &Connection) -> CharForm {
    transgress_ch_path(&interpolate(c0, c1))
}

/// `Ã` along a given path of real connections.
pub fn transgress_ahat_path(tc: &TConnection) -> Result<CharForm> {
    if !tc.is_real() {
        return Err(Error::Domain("Â transgression requires real connections".into()));
    }
    let a = ahat_list(&tc.curvature(), tc.rank());
    Ok(fiber_sequence(
        CharKind::AHatTransgression,
        tc.restrict(0.0).dim(),
        a.into_iter().enumerate().map(|(k, f)| (2 * k as i32, f)).collect(),
        vec!["∇₁".into(), "∇₀".into()],
    ))
}

/// `Ã(∇₁,∇₀)` with `dÃ = Â(∇₁) − Â(∇₀)`.
pub fn transgress_ahat(c1: &Connection, c0: &Connection) -> Result<CharForm> {
    transgress_ahat_path(&interpolate(c0, c1))
}

/// Kamber–Tondeur form `ch̃_{2p}(∇,∇*)` of degree `2p − 1`; verified imaginary.
pub fn kamber_tondeur(c: &Connection, h: &HermMetric, p: usize, tol: &Tolerances) -> Result<Form> {
    if p == 0 {
        return Err(Error::Domain("Kamber–Tondeur forms start at p = 1".into()));
    }
    let star = c.adjoint(h)?;
    let f = transgress_ch(c, &star).entry(p as i32);
    let real_part = f.add(&f.conj()).scale(Complex64::new(0.5, 0.0)).sup_norm();
    if real_part >= tol.vanish {
        return Err(Error::verification("imaginarity of the Kamber–Tondeur form", real_part, tol.vanish));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::poly_one_form;
    use crate::trigcalc::TrigPoly;
    use std::f64::consts::PI;

    fn omega3() -> Form {
        poly_one_form(vec![TrigPoly::sin(3, &[0, 1, 0]), TrigPoly::cos(3, &[0, 0, 1]), TrigPoly::real(3, 0.5)])
    }

    #[test]
    fn abelian_transgression() {
        let a1 = poly_one_form(vec![TrigPoly::sin(2, &[0, 1]), TrigPoly::zero(2)]);
        let c1 = Connection::new(a1.clone(), true).unwrap();
        let c0 = Connection::trivial(2, 1);
        let t = transgress_ch(&c1, &c0).entry(1);
        let expect = a1.scale(Complex64::new(0.0, 1.0 / (2.0 * PI)));
        assert!(t.max_coeff_diff(&expect) < 1e-15);
        assert!(transgress_ch(&c1, &c1).seq.entries().is_empty());
    }

    #[test]
    fn kamber_tondeur_rank_one() {
        let w = omega3();
        let c = Connection::new(w.clone(), true).unwrap();
        let kt = kamber_tondeur(&c, &HermMetric::identity(1), 1, &Tolerances::default()).unwrap();
        let expect = w.scale(Complex64::new(0.0, 1.0 / PI));
        assert!(kt.max_coeff_diff(&expect) < 1e-15);
    }

    #[test]
    fn sin_connection_integrates_to_zero() {
        let a = poly_one_form(vec![TrigPoly::zero(2), TrigPoly::sin(2, &[1, 0])]);
        let ch = chern_character(&Connection::new(a, true).unwrap());
        assert!(ch.degree(2).integrate_top().unwrap().norm() < 1e-15);
        assert!(ch.closedness_residual() < 1e-12);
    }

    #[test]
    fn components_cover_all_degrees() {
        let c = Connection::trivial(3, 2);
        assert_eq!(chern_character(&c).components().len(), 2);
        assert_eq!(transgress_ch(&c, &c).components().len(), 2);
    }
}
