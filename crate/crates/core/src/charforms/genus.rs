use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use super::ratpoly::{factorial, rat, series_log, RatPoly, Series};

/// Coefficients `a_m` of `log((√y/2)/sinh(√y/2)) = Σ_{m≥1} a_m y^m`, `m = 1..=k`.
pub fn ahat_log_coeffs(k: usize) -> Vec<BigRational> {
    let n = k + 1;
    // sinh(z)/z with z = √y/2: Σ_j y^j / (4^j (2j+1)!)
    let g: Series = (0..n as u32)
        .map(|j| BigRational::new(BigInt::one(), BigInt::from(4u32).pow(j) * factorial(2 * j + 1)))
        .collect();
    series_log(&g, n).into_iter().skip(1).map(|c| -c).collect()
}

/// Power sums `P_1..P_k` of roots written in the elementary symmetric
/// functions `e_1..e_k` (Newton's identities). Variable `i` has weight
/// `(i+1)·unit`.
pub fn power_sums_in_elementary(k: usize, unit: u32) -> Vec<RatPoly> {
    let weights: Vec<u32> = (1..=k as u32).map(|i| i * unit).collect();
    let e = |i: usize| RatPoly::var(weights.clone(), i - 1);
    let mut p: Vec<RatPoly> = Vec::with_capacity(k);
    for m in 1..=k {
        // P_m = Σ_{i=1}^{m-1} (-1)^{i-1} e_i P_{m-i} + (-1)^{m-1} m e_m
        let mut acc = e(m).scale(&rat(if m % 2 == 1 { m as i64 } else { -(m as i64) }, 1));
        for i in 1..m {
            let sign = if i % 2 == 1 { BigRational::one() } else { -BigRational::one() };
            acc = acc.add(&e(i).mul(&p[m - i - 1]).scale(&sign));
        }
        p.push(acc);
    }
    p
}

/// Â-genus as a polynomial in the Pontryagin classes, through form degree `max_degree`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenusTable {
    max_degree: u32,
    log_coeffs: Vec<BigRational>,
    ahat: RatPoly,
}

impl GenusTable {
    pub fn new(max_degree: u32) -> GenusTable {
        let k = (max_degree / 4).max(1) as usize;
        let weights: Vec<u32> = (1..=k as u32).map(|i| 4 * i).collect();
        let a = ahat_log_coeffs(k);
        let p = power_sums_in_elementary(k, 4);
        let log = p
            .iter()
            .zip(&a)
            .fold(RatPoly::zero(weights.clone()), |acc, (pm, am)| acc.add(&pm.scale(am)));
        GenusTable {
            max_degree,
            log_coeffs: a,
            ahat: log.exp_trunc(max_degree),
        }
    }

    /// Shared table through degree 8.
    pub fn standard() -> &'static GenusTable {
        static TABLE: OnceLock<GenusTable> = OnceLock::new();
        TABLE.get_or_init(|| GenusTable::new(8))
    }

    /// Table covering at least `max_degree` (the shared one when it suffices).
    pub fn covering(max_degree: u32) -> std::borrow::Cow<'static, GenusTable> {
        let s = GenusTable::standard();
        if max_degree <= s.max_degree {
            std::borrow::Cow::Borrowed(s)
        } else {
            std::borrow::Cow::Owned(GenusTable::new(max_degree))
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn num_vars(&self) -> usize {
        self.ahat.nvars()
    }

    /// Full `1 + Â₄ + Â₈ + …` in `p_1..p_k`.
    pub fn ahat(&self) -> &RatPoly {
        &self.ahat
    }

    /// `Â_{4k}` as a homogeneous polynomial in `p_1..p_k`.
    pub fn ahat_coefficients(&self, k: u32) -> RatPoly {
        assert!(4 * k <= self.max_degree, "Â_{} beyond table degree {}", 4 * k, self.max_degree);
        self.ahat.homogeneous_part(4 * k)
    }

    pub fn log_coeffs(&self) -> &[BigRational] {
        &self.log_coeffs
    }

    pub fn to_json(&self) -> Value {
        let names: Vec<String> = (1..=self.num_vars()).map(|i| format!("p{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        json!({
            "max_degree": self.max_degree,
            "log_coefficients": self.log_coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "ahat": (1..=self.max_degree / 4)
                .map(|k| json!({"degree": 4 * k, "polynomial": self.ahat_coefficients(k).display_with(&refs)}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Which monomials of the `c`-part survive truncation at `2q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Weighted degree `≤ 2q`.
    #[default]
    Inclusive,
    /// Weighted degree `< 2q`.
    Strict,
}

impl Truncation {
    pub fn keeps(self, degree: u32, q: u32) -> bool {
        match self {
            Truncation::Inclusive => degree <= 2 * q,
            Truncation::Strict => degree < 2 * q,
        }
    }
}

/// `A(c_1,…,c_q)` with `Â(∇)^{≤2q} = A(ch_2(∇),…,ch_{2q}(∇))` for complexified
/// real bundles; `c_i` stands for `ch_{2i}` and has weight `2i`.
///
/// On a complexification the Chern roots come in pairs `±x_ℓ`, so
/// `Σ x_ℓ^{2m} = ((2m)!/2)·ch_{4m}` and `log Â = Σ a_m ((2m)!/2) c_{2m}`.
pub fn ahat_in_ch(q: u32, mode: Truncation) -> RatPoly {
    let weights: Vec<u32> = (1..=q.max(1)).map(|i| 2 * i).collect();
    let mmax = (q / 2) as usize;
    let a = ahat_log_coeffs(mmax.max(1));
    let mut log = RatPoly::zero(weights.clone());
    for m in 1..=mmax {
        let c = &a[m - 1] * BigRational::new(factorial(2 * m as u32), BigInt::from(2));
        log = log.add(&RatPoly::var(weights.clone(), 2 * m - 1).scale(&c));
    }
    log.exp_trunc(2 * q).filter_degree(|d| mode.keeps(d, q))
}
