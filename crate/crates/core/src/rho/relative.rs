use num_complex::Complex64;

use super::{integrate_pairing, reduce_mod_z, FramingData};
use crate::charforms::{ahat_form, chern_character_filtered, transgress_ahat, CharForm};
use crate::connections::{Connection, PartialConnection};
use crate::error::{Error, Result};
use crate::forms::GradedFormSequence;
use crate::tolerance::Tolerances;

/// `e_u(s₁,s₀) = [∫_M Ã(∇^{s₁},∇^{s₀})∧u]` in ℂ/ℤ for a closed form `u`.
pub fn e_relative(s1: &FramingData, s0: &FramingData, u: &CharForm, tol: &Tolerances) -> Result<Complex64> {
    if s1.rank() != s0.rank() {
        return Err(Error::DimensionMismatch(format!(
            "framings of ranks {} and {}",
            s1.rank(),
            s0.rank()
        )));
    }
    if s1.dim() != s0.dim() || u.seq.dim() != s1.dim() {
        return Err(Error::DimensionMismatch("framings and class on different tori".into()));
    }
    let closed = u.closedness_residual();
    if closed >= tol.identity {
        return Err(Error::verification("closedness of the paired class", closed, tol.identity));
    }
    let at = transgress_ahat(s1.connection(), s0.connection())?;
    Ok(reduce_mod_z(integrate_pairing(&at.seq, &u.seq, tol)?))
}

/// `[∫_M Â⁻(∇^{F⊥})∧ch⁻(∇)]` in ℂ/ℤ, both factors taken in the filtered
/// complex of `pc`'s foliation. When `2·codim F < dim M` the top entry lies in
/// `F^{dim/2}Ω^{dim} = 0` and its vanishing is asserted.
pub fn bordism_integrand(pc: &PartialConnection, c: &Connection, cf: &Connection, tol: &Tolerances) -> Result<Complex64> {
    let dim = c.dim();
    if dim % 2 != 0 {
        return Err(Error::Domain(format!("bordism integrand needs an even-dimensional torus, got T^{dim}")));
    }
    if cf.dim() != dim {
        return Err(Error::DimensionMismatch("normal connection on the wrong torus".into()));
    }
    let fol = pc.foliation();
    let ch = chern_character_filtered(c, pc, tol)?;
    let ahat = ahat_form(cf)?;
    let ahat = GradedFormSequence::negative(dim, 0, ahat.seq.entries().clone(), fol, tol.vanish)?;
    let prod = ahat.dd_wedge(&ch.seq, tol.vanish)?;
    let p = (dim / 2) as i32;
    let top = prod.entry(p);
    if 2 * fol.codim() < dim {
        let size = top.sup_norm();
        if size >= tol.vanish {
            return Err(Error::Filtration { p, found: fol.codim() as i32 });
        }
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(reduce_mod_z(top.integrate_top_with_error(tol)?.0))
}

/// `diag(1,…,k,…,1)` with `k` on `axis`: the `k`-fold covering in that direction.
pub fn covering_matrix(dim: usize, axis: usize, k: i32) -> Vec<Vec<i32>> {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i != j { 0 } else if i == axis { k } else { 1 }).collect())
        .collect()
}

/// Pulls a partial connection back along a diagonal covering map.
pub fn pullback_partial(pc: &PartialConnection, m: &[Vec<i32>], tol: &Tolerances) -> Result<PartialConnection> {
    PartialConnection::new(pc.base().pullback(m), pc.foliation().pullback_diagonal(m, tol)?, tol)
}
