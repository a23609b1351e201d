use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::grid::Grid;
use super::poly::TrigPoly;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Quotient `num / den` of Fourier series with a certified nonvanishing denominator.
///
/// `den == None` is the polynomial subring. `den_min` is the smallest modulus
/// of the denominator seen on its certification grid (products multiply it).
#[derive(Clone, Debug)]
pub struct TrigScalar {
    num: TrigPoly,
    den: Option<TrigPoly>,
    den_min: f64,
}

impl PartialEq for TrigScalar {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl From<TrigPoly> for TrigScalar {
    fn from(p: TrigPoly) -> Self {
        TrigScalar::poly(p)
    }
}

/// Smallest modulus of `p` on its certification grid.
pub fn grid_min_modulus(p: &TrigPoly) -> f64 {
    let grid = Grid::certification_capped(&p.bandwidth());
    grid.synthesize(p.terms()).iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min)
}

impl TrigScalar {
    pub fn poly(p: TrigPoly) -> TrigScalar {
        TrigScalar {
            num: p,
            den: None,
            den_min: 1.0,
        }
    }

    pub fn zero(dim: usize) -> TrigScalar {
        TrigScalar::poly(TrigPoly::zero(dim))
    }

    pub fn one(dim: usize) -> TrigScalar {
        TrigScalar::poly(TrigPoly::one(dim))
    }

    pub fn constant(dim: usize, c: Complex64) -> TrigScalar {
        TrigScalar::poly(TrigPoly::constant(dim, c))
    }

    pub fn real(dim: usize, c: f64) -> TrigScalar {
        TrigScalar::poly(TrigPoly::real(dim, c))
    }

    /// `num / den`, certifying `den` on a grid of `4(2B+1)` nodes per axis.
    pub fn quotient(num: TrigPoly, den: TrigPoly) -> Result<TrigScalar> {
        TrigScalar::quotient_with(num, den, Tolerances::default().den_margin)
    }

    pub fn quotient_with(num: TrigPoly, den: TrigPoly, margin: f64) -> Result<TrigScalar> {
        if num.dim() != den.dim() {
            return Err(Error::DimensionMismatch(format!(
                "numerator on T^{}, denominator on T^{}",
                num.dim(),
                den.dim()
            )));
        }
        if den.is_constant() {
            let c = den.constant_term();
            if c.norm() < margin {
                return Err(Error::VanishingDenominator { min: c.norm(), margin });
            }
            return Ok(TrigScalar::poly(num.scale(c.inv())));
        }
        let min = grid_min_modulus(&den);
        if min < margin {
            return Err(Error::VanishingDenominator { min, margin });
        }
        Ok(TrigScalar {
            num,
            den: Some(den),
            den_min: min,
        })
    }

    pub fn dim(&self) -> usize {
        self.num.dim()
    }

    pub fn num(&self) -> &TrigPoly {
        &self.num
    }

    /// Denominator, `None` for the polynomial subring.
    pub fn den(&self) -> Option<&TrigPoly> {
        self.den.as_ref()
    }

    pub fn den_or_one(&self) -> TrigPoly {
        self.den.clone().unwrap_or_else(|| TrigPoly::one(self.dim()))
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_none()
    }

    pub fn as_poly(&self) -> Option<&TrigPoly> {
        self.den.is_none().then_some(&self.num)
    }

    /// Exactly zero (empty numerator).
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_none() && self.num.is_constant()
    }

    pub fn den_min(&self) -> f64 {
        self.den_min
    }

    fn with_den(num: TrigPoly, den: Option<TrigPoly>, den_min: f64) -> TrigScalar {
        match den {
            Some(d) if d.is_constant() => {
                let c = d.constant_term();
                TrigScalar::poly(num.scale(c.inv()))
            }
            den => TrigScalar { num, den, den_min },
        }
    }

    pub fn add(&self, other: &TrigScalar) -> TrigScalar {
        match (&self.den, &other.den) {
            (None, None) => TrigScalar::poly(self.num.add(&other.num)),
            (Some(a), Some(b)) if a == b => TrigScalar::with_den(self.num.add(&other.num), Some(a.clone()), self.den_min),
            (None, Some(b)) => TrigScalar::with_den(self.num.mul(b).add(&other.num), Some(b.clone()), other.den_min),
            (Some(a), None) => TrigScalar::with_den(self.num.add(&other.num.mul(a)), Some(a.clone()), self.den_min),
            (Some(a), Some(b)) => TrigScalar::with_den(
                self.num.mul(b).add(&other.num.mul(a)),
                Some(a.mul(b)),
                self.den_min * other.den_min,
            ),
        }
    }

    pub fn sub(&self, other: &TrigScalar) -> TrigScalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &TrigScalar) -> TrigScalar {
        if self.is_zero() || other.is_zero() {
            return TrigScalar::zero(self.dim());
        }
        let num = self.num.mul(&other.num);
        match (&self.den, &other.den) {
            (None, None) => TrigScalar::poly(num),
            (Some(a), None) => TrigScalar::with_den(num, Some(a.clone()), self.den_min),
            (None, Some(b)) => TrigScalar::with_den(num, Some(b.clone()), other.den_min),
            (Some(a), Some(b)) => TrigScalar::with_den(num, Some(a.mul(b)), self.den_min * other.den_min),
        }
    }

    pub fn scale(&self, s: Complex64) -> TrigScalar {
        TrigScalar {
            num: self.num.scale(s),
            den: self.den.clone(),
            den_min: self.den_min,
        }
    }

    pub fn neg(&self) -> TrigScalar {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn conj(&self) -> TrigScalar {
        TrigScalar {
            num: self.num.conj(),
            den: self.den.as_ref().map(TrigPoly::conj),
            den_min: self.den_min,
        }
    }

    /// Multiplicative inverse; the numerator must certify as nonvanishing.
    pub fn recip(&self) -> Result<TrigScalar> {
        TrigScalar::quotient(self.den_or_one(), self.num.clone())
    }

    /// Quotient-rule derivative along `axis`.
    pub fn deriv(&self, axis: usize) -> TrigScalar {
        match &self.den {
            None => TrigScalar::poly(self.num.deriv(axis)),
            Some(d) => {
                let num = self.num.deriv(axis).mul(d).sub(&self.num.mul(&d.deriv(axis)));
                TrigScalar::with_den(num, Some(d.mul(d)), self.den_min * self.den_min)
            }
        }
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        let n = self.num.eval(x);
        match &self.den {
            None => n,
            Some(d) => n / d.eval(x),
        }
    }

    pub fn bandwidth(&self) -> Vec<u32> {
        let mut bw = self.num.bandwidth();
        if let Some(d) = &self.den {
            for (b, e) in bw.iter_mut().zip(d.bandwidth()) {
                *b = (*b).max(e);
            }
        }
        bw
    }

    /// Sup of the modulus on the certification grid of the combined bandwidth.
    pub fn grid_sup(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let grid = Grid::certification_capped(&self.bandwidth());
        self.grid_values(&grid).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// True when the sup-norm is below `tol`; coefficient bounds decide before
    /// falling back to grid evaluation.
    pub fn is_negligible(&self, tol: f64) -> bool {
        if self.num.is_zero() {
            return true;
        }
        match &self.den {
            None => {
                if self.num.l1_norm() < tol {
                    return true;
                }
                if self.num.max_coeff() >= tol {
                    return false;
                }
            }
            Some(d) => {
                if self.num.l1_norm() / self.den_min < tol {
                    return true;
                }
                if self.num.max_coeff() / d.l1_norm() >= tol {
                    return false;
                }
            }
        }
        self.grid_sup() < tol
    }

    /// Torus integral (volume one) and an error estimate.
    ///
    /// Exact for polynomials; quotients use the periodic trapezoid rule with
    /// grid doubling until successive values agree.
    pub fn integrate(&self, tol: &Tolerances) -> Result<(Complex64, f64)> {
        if self.den.is_none() {
            return Ok((self.num.mean(), 0.0));
        }
        let bw = self.bandwidth();
        let mut counts: Vec<usize> = bw
            .iter()
            .map(|&b| if b == 0 { 1 } else { (2 * b as usize + 2).max(8) })
            .collect();
        let mut prev = self.trapezoid(&counts);
        let mut last_est = f64::INFINITY;
        loop {
            for c in counts.iter_mut().filter(|c| **c > 1) {
                *c *= 2;
            }
            let points: usize = counts.iter().product();
            if points > tol.quad_cap.min(crate::tolerance::max_grid_points()) {
                return Err(Error::QuadratureNonconvergence {
                    value: prev.re,
                    estimate: last_est,
                });
            }
            let next = self.trapezoid(&counts);
            last_est = (next - prev).norm();
            if last_est < tol.quad_agree {
                return Ok((next, last_est));
            }
            prev = next;
        }
    }

    fn trapezoid(&self, counts: &[usize]) -> Complex64 {
        let grid = Grid::new(counts.to_vec());
        self.grid_values(&grid).iter().sum::<Complex64>() / grid.len() as f64
    }

    /// Values at every node of `grid`.
    pub fn grid_values(&self, grid: &Grid) -> Vec<Complex64> {
        let mut vals = grid.synthesize(self.num.terms());
        if let Some(d) = &self.den {
            for (v, w) in vals.iter_mut().zip(grid.synthesize(d.terms())) {
                *v /= w;
            }
        }
        vals
    }

    pub fn pullback(&self, m: &[Vec<i32>]) -> TrigScalar {
        TrigScalar {
            num: self.num.pullback(m),
            den: self.den.as_ref().map(|d| d.pullback(m)),
            den_min: self.den_min,
        }
    }

    /// Largest coefficient difference of `self − other` in lowest terms of the
    /// common denominator; zero iff the two agree exactly as series.
    pub fn max_coeff_diff(&self, other: &TrigScalar) -> f64 {
        self.sub(other).num.max_coeff()
    }
}

impl Add for &TrigScalar {
    type Output = TrigScalar;
    fn add(self, rhs: &TrigScalar) -> TrigScalar {
        TrigScalar::add(self, rhs)
    }
}

impl Sub for &TrigScalar {
    type Output = TrigScalar;
    fn sub(self, rhs: &TrigScalar) -> TrigScalar {
        TrigScalar::sub(self, rhs)
    }
}

impl Mul for &TrigScalar {
    type Output = TrigScalar;
    fn mul(self, rhs: &TrigScalar) -> TrigScalar {
        TrigScalar::mul(self, rhs)
    }
}

impl Neg for &TrigScalar {
    type Output = TrigScalar;
    fn neg(self) -> TrigScalar {
        TrigScalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn two_plus_sin() -> TrigPoly {
        TrigPoly::real(1, 2.0).add(&TrigPoly::sin(1, &[1]))
    }

    #[test]
    fn quotient_rule() {
        let f = TrigScalar::quotient(TrigPoly::one(1), two_plus_sin()).unwrap();
        let df = f.deriv(0);
        for &x in &[0.0, 0.1, 0.37, 0.8] {
            let s = 2.0 + (2.0 * PI * x).sin();
            let expect = -2.0 * PI * (2.0 * PI * x).cos() / (s * s);
            assert_abs_diff_eq!(df.eval(&[x]).re, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn rejects_vanishing_denominator() {
        let den = TrigPoly::real(1, 1.0).add(&TrigPoly::sin(1, &[1]));
        assert!(matches!(
            TrigScalar::quotient(TrigPoly::one(1), den),
            Err(Error::VanishingDenominator { .. })
        ));
        assert!(TrigScalar::quotient(TrigPoly::one(1), TrigPoly::zero(1)).is_err());
    }

    #[test]
    fn constant_denominator_is_cleared() {
        let q = TrigScalar::quotient(TrigPoly::sin(1, &[1]), TrigPoly::real(1, 2.0)).unwrap();
        assert!(q.is_poly());
        assert_abs_diff_eq!(q.eval(&[0.25]).re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn integral_of_reciprocal() {
        let f = TrigScalar::quotient(TrigPoly::one(1), two_plus_sin()).unwrap();
        let (v, err) = f.integrate(&Tolerances::default()).unwrap();
        assert_abs_diff_eq!(v.re, 1.0 / 3f64.sqrt(), epsilon = 1e-12);
        assert!(err < 1e-10);
    }

    #[test]
    fn quotient_times_denominator() {
        let f = TrigScalar::quotient(TrigPoly::sin(1, &[2]), two_plus_sin()).unwrap();
        let g = f.mul(&TrigScalar::poly(two_plus_sin()));
        let diff = g.sub(&TrigScalar::poly(TrigPoly::sin(1, &[2])));
        assert!(diff.is_negligible(1e-12));
    }

    #[test]
    fn negligible_by_bounds() {
        assert!(TrigScalar::zero(2).is_negligible(1e-9));
        assert!(!TrigScalar::real(2, 1e-3).is_negligible(1e-9));
        assert!(TrigScalar::real(2, 1e-12).is_negligible(1e-9));
    }
}
