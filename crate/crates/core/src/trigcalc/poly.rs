use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::freq::{Freq, MAX_DIM};
use crate::error::{Error, Result};
use crate::tolerance::DROP_TOL;

/// Finite Fourier series `Σ c_k e^{2πi k·x}` on the `dim`-torus.
///
/// Coefficients with modulus below [`DROP_TOL`] are never stored, so the
/// zero series is the empty map.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly {
    dim: usize,
    terms: BTreeMap<Freq, Complex64>,
}

impl TrigPoly {
    pub fn zero(dim: usize) -> TrigPoly {
        assert!((1..=MAX_DIM).contains(&dim), "torus dimension {dim} out of range");
        TrigPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Complex64) -> TrigPoly {
        let mut p = TrigPoly::zero(dim);
        p.insert(Freq::ZERO, c);
        p
    }

    pub fn real(dim: usize, c: f64) -> TrigPoly {
        TrigPoly::constant(dim, Complex64::new(c, 0.0))
    }

    pub fn one(dim: usize) -> TrigPoly {
        TrigPoly::real(dim, 1.0)
    }

    /// Single mode `c·e^{2πi k·x}`.
    pub fn mode(dim: usize, k: &[i32], c: Complex64) -> TrigPoly {
        assert_eq!(k.len(), dim, "frequency length must equal torus dimension");
        let mut p = TrigPoly::zero(dim);
        p.insert(Freq::from_slice(k), c);
        p
    }

    /// `sin(2π k·x)`.
    pub fn sin(dim: usize, k: &[i32]) -> TrigPoly {
        let neg: Vec<i32> = k.iter().map(|v| -v).collect();
        TrigPoly::mode(dim, k, Complex64::new(0.0, -0.5))
            .add(&TrigPoly::mode(dim, &neg, Complex64::new(0.0, 0.5)))
    }

    /// `cos(2π k·x)`.
    pub fn cos(dim: usize, k: &[i32]) -> TrigPoly {
        let neg: Vec<i32> = k.iter().map(|v| -v).collect();
        TrigPoly::mode(dim, k, Complex64::new(0.5, 0.0))
            .add(&TrigPoly::mode(dim, &neg, Complex64::new(0.5, 0.0)))
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<i32>, Complex64)>) -> Result<TrigPoly> {
        let mut p = TrigPoly::zero(dim);
        for (k, c) in terms {
            if k.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "frequency {k:?} has length {}, torus dimension is {dim}",
                    k.len()
                )));
            }
            p.insert(Freq::from_slice(&k), c);
        }
        Ok(p)
    }

    fn insert(&mut self, k: Freq, c: Complex64) {
        let e = self.terms.entry(k).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if e.norm() < DROP_TOL {
            self.terms.remove(&k);
        }
    }

    fn pruned(mut self) -> TrigPoly {
        self.terms.retain(|_, c| c.norm() >= DROP_TOL);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Freq, &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, k: &Freq) -> Complex64 {
        self.terms.get(k).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when only the zero mode is present.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Freq::is_zero)
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeff(&Freq::ZERO)
    }

    fn check_dim(&self, other: &TrigPoly) {
        assert_eq!(self.dim, other.dim, "trig polynomials on tori of different dimension");
    }

    pub fn add(&self, other: &TrigPoly) -> TrigPoly {
        self.check_dim(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, *c);
        }
        out
    }

    pub fn sub(&self, other: &TrigPoly) -> TrigPoly {
        self.check_dim(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, -*c);
        }
        out
    }

    pub fn mul(&self, other: &TrigPoly) -> TrigPoly {
        self.check_dim(other);
        let mut prods: Vec<(Freq, Complex64)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                prods.push((k1.add(k2), c1 * c2));
            }
        }
        prods.sort_by_key(|(k, _)| *k);
        let mut merged: Vec<(Freq, Complex64)> = Vec::with_capacity(prods.len());
        for (k, c) in prods {
            match merged.last_mut() {
                Some((last, acc)) if *last == k => *acc += c,
                _ => merged.push((k, c)),
            }
        }
        merged.retain(|(_, c)| c.norm() >= DROP_TOL);
        TrigPoly {
            dim: self.dim,
            terms: merged.into_iter().collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> TrigPoly {
        TrigPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
        .pruned()
    }

    pub fn neg(&self) -> TrigPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn pow(&self, e: u32) -> TrigPoly {
        let mut out = TrigPoly::one(self.dim);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Pointwise complex conjugate: `k ↦ -k`, `c ↦ conj(c)`.
    pub fn conj(&self) -> TrigPoly {
        TrigPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, c)| (k.neg(), c.conj())).collect(),
        }
    }

    /// `∂/∂x_axis`; the mode `k` picks up `2πi k_axis`.
    pub fn deriv(&self, axis: usize) -> TrigPoly {
        assert!(axis < self.dim, "axis {axis} out of range for dimension {}", self.dim);
        TrigPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c * Complex64::new(0.0, 2.0 * PI * k.get(axis) as f64)))
                .collect(),
        }
        .pruned()
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        assert_eq!(x.len(), self.dim, "point dimension mismatch");
        self.terms
            .iter()
            .map(|(k, c)| c * Complex64::from_polar(1.0, 2.0 * PI * k.dot(x)))
            .sum()
    }

    /// Exact torus integral (volume normalised to one).
    pub fn mean(&self) -> Complex64 {
        self.constant_term()
    }

    /// Largest `|k_j|` along every axis.
    pub fn bandwidth(&self) -> Vec<u32> {
        let mut bw = vec![0u32; self.dim];
        for k in self.terms.keys() {
            for (j, b) in bw.iter_mut().enumerate() {
                *b = (*b).max(k.get(j).unsigned_abs());
            }
        }
        bw
    }

    /// `Σ|c_k|`, an upper bound for the sup norm.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// `max|c_k|`, a lower bound for the sup norm.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient difference to `other`.
    pub fn max_coeff_diff(&self, other: &TrigPoly) -> f64 {
        self.sub(other).max_coeff()
    }

    /// Pullback along the linear torus map `x ↦ M x` (integer matrix, row-major).
    pub fn pullback(&self, m: &[Vec<i32>]) -> TrigPoly {
        assert_eq!(m.len(), self.dim, "pullback matrix must be square of torus dimension");
        let mut out = TrigPoly::zero(self.dim);
        for (k, c) in &self.terms {
            let kk: Vec<i32> = (0..self.dim)
                .map(|j| (0..self.dim).map(|i| k.get(i) * m[i][j]).sum())
                .collect();
            out.insert(Freq::from_slice(&kk), *c);
        }
        out
    }

    /// Re-embeds on a torus of dimension `dim` (axes appended at the end).
    pub fn extend_dim(&self, dim: usize) -> TrigPoly {
        assert!(dim >= self.dim);
        TrigPoly {
            dim,
            terms: self.terms.clone(),
        }
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        TrigPoly::add(self, rhs)
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        TrigPoly::sub(self, rhs)
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        TrigPoly::mul(self, rhs)
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        TrigPoly::neg(self)
    }
}
