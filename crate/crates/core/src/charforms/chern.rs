use std::f64::consts::PI;

use num_complex::Complex64;

use super::genus::GenusTable;
use crate::forms::FormAlgebra;

/// `(−1/2πi)^p / p!`.
fn ch_factor(p: usize) -> Complex64 {
    let base = Complex64::new(0.0, 1.0 / (2.0 * PI)); // −1/(2πi) = i/(2π)
    let fact: f64 = (1..=p).map(|k| k as f64).product();
    base.powu(p as u32) / fact
}

/// `ch_{2p} = tr((−R/2πi)^p)/p!` for `p = 0..=top/2`, from a curvature `R`.
pub fn ch_components<X: FormAlgebra>(r: &X) -> Vec<X> {
    let pmax = r.top_degree() / 2;
    let unit = r.unit_like();
    let mut out = vec![unit.scale(Complex64::new(r.rank() as f64, 0.0))];
    if pmax >= 1 {
        out.push(r.trace().scale(ch_factor(1)));
    }
    let mut power = r.clone();
    for p in 2..=pmax {
        out.push(power.trace_wedge(r).scale(ch_factor(p)));
        if p < pmax {
            power = power.wedge(r);
        }
    }
    out
}

/// Chern forms `c_0..c_pmax` (`c = det(1 − R/2πi)`) from the Chern character
/// by Newton's identities: `s_k = k!·ch_{2k}`, `k c_k = Σ (−1)^{i−1} c_{k−i} s_i`.
pub fn chern_from_ch<X: FormAlgebra>(ch: &[X], rank: usize) -> Vec<X> {
    let unit = ch[0].unit_like();
    let s: Vec<X> = ch
        .iter()
        .enumerate()
        .map(|(k, c)| c.scale(Complex64::new((1..=k).map(|j| j as f64).product(), 0.0)))
        .collect();
    let mut c: Vec<X> = vec![unit.clone()];
    for k in 1..ch.len() {
        if k > rank {
            c.push(unit.zero_like(2 * k, 1));
            continue;
        }
        let mut acc = unit.zero_like(2 * k, 1);
        for i in 1..=k {
            let term = c[k - i].wedge(&s[i]);
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc = acc.add(&term.scale(Complex64::new(sign, 0.0)));
        }
        c.push(acc.scale(Complex64::new(1.0 / k as f64, 0.0)));
    }
    c
}

/// `p_i = (−1)^i c_{2i}` for `i = 0..`, indexed by `i` (form degree `4i`).
pub fn pontryagin_from_chern<X: FormAlgebra>(c: &[X]) -> Vec<X> {
    (0..c.len())
        .step_by(2)
        .map(|k| {
            let i = k / 2;
            c[k].scale(Complex64::new(if i % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
        })
        .collect()
}

/// `Â_{4k}` for `k = 0..` from Pontryagin forms `p_0 = 1, p_1, …`.
pub fn ahat_from_pontryagin<X: FormAlgebra>(p: &[X]) -> Vec<X> {
    let unit = p[0].unit_like();
    let kmax = p.len() - 1;
    let table = GenusTable::covering(4 * kmax.max(1) as u32);
    let vars: Vec<X> = (1..=table.num_vars())
        .map(|i| p.get(i).cloned().unwrap_or_else(|| unit.zero_like(4 * i, 1)))
        .collect();
    let mut out = vec![unit.clone()];
    for k in 1..=kmax {
        let poly = table.ahat_coefficients(k as u32);
        out.push(poly.eval_forms(&vars, &unit, &unit.zero_like(4 * k, 1)));
    }
    out
}
