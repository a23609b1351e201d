use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::forms::FormAlgebra;

/// Multivariate polynomial with exact rational coefficients.
///
/// Variable `i` carries weight `weights[i]`; truncation is by weighted degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    weights: Vec<u32>,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl RatPoly {
    pub fn zero(weights: Vec<u32>) -> RatPoly {
        RatPoly {
            weights,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(weights: Vec<u32>, c: BigRational) -> RatPoly {
        let n = weights.len();
        let mut p = RatPoly::zero(weights);
        p.insert(vec![0; n], c);
        p
    }

    pub fn one(weights: Vec<u32>) -> RatPoly {
        RatPoly::constant(weights, BigRational::one())
    }

    /// The variable `x_i`.
    pub fn var(weights: Vec<u32>, i: usize) -> RatPoly {
        let mut e = vec![0; weights.len()];
        e[i] = 1;
        let mut p = RatPoly::zero(weights);
        p.insert(e, BigRational::one());
        p
    }

    /// `c · Π x_i^{e_i}`.
    pub fn monomial(weights: Vec<u32>, exps: Vec<u32>, c: BigRational) -> RatPoly {
        let mut p = RatPoly::zero(weights);
        p.insert(exps, c);
        p
    }

    fn insert(&mut self, e: Vec<u32>, c: BigRational) {
        assert_eq!(e.len(), self.weights.len(), "exponent length mismatch");
        let v = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn weighted_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        assert_eq!(self.weights, other.weights, "polynomials in different variables");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> RatPoly {
        let mut out = RatPoly::zero(self.weights.clone());
        for (e, c) in &self.terms {
            out.insert(e.clone(), c * s);
        }
        out
    }

    /// Product keeping only terms of weighted degree `≤ max`.
    pub fn mul_trunc(&self, other: &RatPoly, max: u32) -> RatPoly {
        assert_eq!(self.weights, other.weights, "polynomials in different variables");
        let mut out = RatPoly::zero(self.weights.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if self.weighted_degree(&e) <= max {
                    out.insert(e, c1 * c2);
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        self.mul_trunc(other, u32::MAX)
    }

    /// Terms with weighted degree satisfying `keep`.
    pub fn filter_degree(&self, keep: impl Fn(u32) -> bool) -> RatPoly {
        let mut out = RatPoly::zero(self.weights.clone());
        for (e, c) in &self.terms {
            if keep(self.weighted_degree(e)) {
                out.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn homogeneous_part(&self, deg: u32) -> RatPoly {
        self.filter_degree(|d| d == deg)
    }

    /// `exp(self)` truncated at weighted degree `max`; `self` must have no constant term.
    pub fn exp_trunc(&self, max: u32) -> RatPoly {
        assert!(
            self.coeff(&vec![0; self.nvars()]).is_zero(),
            "exponential of a series with constant term"
        );
        let mut out = RatPoly::one(self.weights.clone());
        let mut power = RatPoly::one(self.weights.clone());
        let mut n: i64 = 1;
        loop {
            power = power.mul_trunc(self, max).scale(&rat(1, n));
            if power.is_zero() {
                return out;
            }
            out = out.add(&power);
            n += 1;
        }
    }

    /// Substitutes `x_i ↦ vals[i]`, using the wedge product; `unit` is the
    /// algebra's unit and `zero` the zero of the target degree.
    pub fn eval_forms<X: FormAlgebra>(&self, vals: &[X], unit: &X, zero: &X) -> X {
        assert_eq!(vals.len(), self.nvars(), "one value per variable required");
        let mut acc = zero.clone();
        for (e, c) in &self.terms {
            let mut m = unit.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    m = m.wedge(&vals[i]);
                }
            }
            let s = c.to_f64().expect("finite rational coefficient");
            let term = m.scale(Complex64::new(s, 0.0));
            acc = if acc.degree() == term.degree() && acc.rank() == term.rank() {
                acc.add(&term)
            } else if acc.is_zero() {
                term
            } else {
                panic!("evaluating a non-homogeneous polynomial into forms");
            };
        }
        acc
    }

    /// Substitutes numbers.
    pub fn eval_f64(&self, vals: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                c.to_f64().unwrap() * e.iter().zip(vals).map(|(&k, v)| v.powi(k as i32)).product::<f64>()
            })
            .sum()
    }

    /// Composition `x_i ↦ subs[i]` (all in a common variable set).
    pub fn compose(&self, subs: &[RatPoly], max: u32) -> RatPoly {
        assert_eq!(subs.len(), self.nvars(), "one substitution per variable required");
        let w = subs[0].weights.clone();
        let mut out = RatPoly::zero(w.clone());
        for (e, c) in &self.terms {
            let mut m = RatPoly::constant(w.clone(), c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    m = m.mul_trunc(&subs[i], max);
                }
            }
            out = out.add(&m);
        }
        out
    }

    /// Renders with variable names `names[i]`.
    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].to_string() } else { format!("{}^{}", names[i], k) })
                .collect();
            let mag = c.abs();
            let coef = if mono.is_empty() || !mag.is_one() { format!("{mag}") } else { String::new() };
            let body = match (coef.is_empty(), mono.is_empty()) {
                (true, _) => mono.join("*"),
                (false, true) => coef,
                (false, false) => format!("{}*{}", coef, mono.join("*")),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            parts.push((sign, body));
        }
        let mut s = String::new();
        for (k, (sign, body)) in parts.into_iter().enumerate() {
            if k == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            s.push_str(&body);
        }
        s
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars()).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

/// Univariate power series coefficients `[a_0, a_1, …]`.
pub type Series = Vec<BigRational>;

pub fn series_mul(a: &Series, b: &Series, n: usize) -> Series {
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `log(s)` for a series with `s_0 = 1`, through `n` coefficients.
pub fn series_log(s: &Series, n: usize) -> Series {
    assert!(s[0].is_one(), "log of a series with constant term ≠ 1");
    let mut u = s.clone();
    u.resize(n, BigRational::zero());
    u[0] = BigRational::zero();
    let mut out = vec![BigRational::zero(); n];
    let mut power = u.clone();
    for k in 1..n {
        let sign = if k % 2 == 1 { BigRational::one() } else { -BigRational::one() };
        for (o, p) in out.iter_mut().zip(&power) {
            *o += &sign * p / BigRational::from_integer(BigInt::from(k));
        }
        power = series_mul(&power, &u, n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_variable() {
        let x = RatPoly::var(vec![1], 0);
        let e = x.exp_trunc(3);
        assert_eq!(e.coeff(&[3]), rat(1, 6));
        assert_eq!(e.coeff(&[4]), rat(0, 1));
    }

    #[test]
    fn log_of_exp_series() {
        let e: Series = (0..6).map(|k| BigRational::new(BigInt::one(), factorial(k))).collect();
        let l = series_log(&e, 6);
        assert_eq!(l[1], rat(1, 1));
        assert!(l[2..].iter().all(Zero::is_zero));
    }

    #[test]
    fn display() {
        let p = RatPoly::one(vec![2]).sub(&RatPoly::var(vec![2], 0).scale(&rat(1, 24)));
        assert_eq!(p.display_with(&["c2"]), "1 - 1/24*c2");
    }
}
