//! Hurwitz zeta `ζ(s,a) = Σ_{n≥0} (n+a)^{−s}` by Euler–Maclaurin summation.

use crate::error::{Error, Result};

/// `B_2, B_4, …, B_18`.
const BERNOULLI: [f64; 9] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
];

/// Number of Bernoulli correction terms used; the next one serves as error estimate.
pub const CORRECTIONS: usize = 8;

/// Value and error estimate (size of the first omitted correction).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HurwitzValue {
    pub value: f64,
    pub error: f64,
    pub head: usize,
}

fn em_terms(s: f64, a: f64, head: usize) -> (f64, f64) {
    let x = head as f64 + a;
    let mut sum: f64 = (0..head).map(|n| (n as f64 + a).powf(-s)).sum();
    sum += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // rising factorial s(s+1)…(s+2k−2) / (2k)!
    let mut rising = s;
    let mut fact = 2.0;
    let mut omitted = 0.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let term = b / fact * rising * x.powf(-s - 2.0 * k as f64 - 1.0);
        if k < CORRECTIONS {
            sum += term;
        } else {
            omitted = term.abs();
        }
        let m = 2.0 * k as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        fact *= (m + 3.0) * (m + 4.0);
    }
    (sum, omitted)
}

/// `ζ(s,a)` for real `s ≠ 1`, `a > 0`, with head length chosen so that the
/// first omitted correction is below `1e-15` (capped at 10⁴ terms).
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<HurwitzValue> {
    if a <= 0.0 || !a.is_finite() {
        return Err(Error::Domain(format!("Hurwitz zeta needs a > 0, got {a}")));
    }
    if (s - 1.0).abs() < 1e-12 {
        return Err(Error::Domain("Hurwitz zeta has a pole at s = 1".into()));
    }
    let mut head = 8;
    loop {
        let (value, error) = em_terms(s, a, head);
        if error < 1e-15 || head >= 10_000 {
            return Ok(HurwitzValue { value, error, head });
        }
        head *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn riemann_zeta_values() {
        assert!((hurwitz_zeta(2.0, 1.0).unwrap().value - PI * PI / 6.0).abs() < 1e-14);
        assert!((hurwitz_zeta(4.0, 1.0).unwrap().value - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((hurwitz_zeta(0.0, 1.0).unwrap().value + 0.5).abs() < 1e-14);
        assert!((hurwitz_zeta(-1.0, 1.0).unwrap().value + 1.0 / 12.0).abs() < 1e-13);
    }

    #[test]
    fn value_at_zero() {
        for a in [0.1, 0.25, 0.5, 0.9, 2.5] {
            assert!((hurwitz_zeta(0.0, a).unwrap().value - (0.5 - a)).abs() < 1e-12);
        }
    }

    #[test]
    fn half_integer_shift() {
        // ζ(s,1/2) = (2^s − 1) ζ(s)
        let z = hurwitz_zeta(3.0, 1.0).unwrap().value;
        let h = hurwitz_zeta(3.0, 0.5).unwrap().value;
        assert!((h - 7.0 * z).abs() < 1e-13);
    }

    #[test]
    fn domain_errors() {
        assert!(hurwitz_zeta(1.0, 0.5).is_err());
        assert!(hurwitz_zeta(2.0, 0.0).is_err());
    }
}
