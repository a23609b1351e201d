use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::charforms::Truncation;

/// Which odd indices carry a generator `c̃_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum QPrime {
    /// All odd `i ≤ q`.
    #[default]
    Largest,
    /// Only `c̃_1`.
    Smallest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WoConfig {
    pub q: u32,
    pub qprime: QPrime,
    pub truncation: Truncation,
}

impl WoConfig {
    pub fn new(q: u32) -> WoConfig {
        WoConfig {
            q,
            qprime: QPrime::default(),
            truncation: Truncation::default(),
        }
    }

    pub fn with_truncation(self, truncation: Truncation) -> WoConfig {
        WoConfig { truncation, ..self }
    }

    pub fn with_qprime(self, qprime: QPrime) -> WoConfig {
        WoConfig { qprime, ..self }
    }

    pub fn qprime_value(&self) -> u32 {
        match self.qprime {
            _ if self.q == 0 => 0,
            QPrime::Largest => self.q - (1 - self.q % 2),
            QPrime::Smallest => 1,
        }
    }

    /// Odd indices `i ≤ q′`, in increasing order.
    pub fn tilde_indices(&self) -> Vec<u32> {
        (1..=self.qprime_value()).step_by(2).collect()
    }

    /// Whether a `c`-part of weighted degree `w` survives truncation.
    pub fn keeps(&self, w: u32) -> bool {
        self.truncation.keeps(w, self.q)
    }
}

/// `c̃_{i_1}⋯c̃_{i_k}·c_1^{e_1}⋯c_q^{e_q}`, the `c̃` in increasing index order.
///
/// Ordering is degree first, then the `c̃` part, then the `c` exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    tilde: Vec<u32>,
    c: Vec<u32>,
}

impl Monomial {
    /// Builds a monomial; `tilde` must be strictly increasing.
    pub fn new(tilde: Vec<u32>, c: Vec<u32>) -> Monomial {
        debug_assert!(tilde.windows(2).all(|w| w[0] < w[1]));
        let degree = tilde.iter().map(|i| 2 * i - 1).sum::<u32>() + c_weight(&c);
        Monomial { degree, tilde, c }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn tilde(&self) -> &[u32] {
        &self.tilde
    }

    pub fn c(&self) -> &[u32] {
        &self.c
    }

    pub fn c_weight(&self) -> u32 {
        c_weight(&self.c)
    }
}

fn c_weight(c: &[u32]) -> u32 {
    c.iter().enumerate().map(|(i, e)| 2 * (i as u32 + 1) * e).sum()
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.tilde.iter().map(|i| format!("ct{i}")).collect();
        for (i, &e) in self.c.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("c{}", i + 1)),
                _ => parts.push(format!("c{}^{e}", i + 1)),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Element of `WO_q` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WOElement {
    config: WoConfig,
    terms: BTreeMap<Monomial, BigRational>,
}

impl WOElement {
    pub fn zero(config: WoConfig) -> WOElement {
        WOElement {
            config,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(config: WoConfig) -> WOElement {
        WOElement::monomial(config, Monomial::new(vec![], vec![0; config.q as usize]), BigRational::one())
    }

    /// `coeff·m`, truncated to zero if `m` is not in the algebra.
    pub fn monomial(config: WoConfig, m: Monomial, coeff: BigRational) -> WOElement {
        let mut e = WOElement::zero(config);
        e.insert(m, coeff);
        e
    }

    /// The generator `c̃_i`; `None` unless `i` is one of the configured odd indices.
    pub fn tilde(config: WoConfig, i: u32) -> Option<WOElement> {
        config
            .tilde_indices()
            .contains(&i)
            .then(|| WOElement::monomial(config, Monomial::new(vec![i], vec![0; config.q as usize]), BigRational::one()))
    }

    /// The generator `c_i`, `1 ≤ i ≤ q`.
    pub fn c(config: WoConfig, i: u32) -> Option<WOElement> {
        (1..=config.q).contains(&i).then(|| {
            let mut c = vec![0; config.q as usize];
            c[i as usize - 1] = 1;
            WOElement::monomial(config, Monomial::new(vec![], c), BigRational::one())
        })
    }

    fn admissible(&self, m: &Monomial) -> bool {
        let allowed = self.config.tilde_indices();
        m.c.len() == self.config.q as usize
            && m.tilde.iter().all(|i| allowed.contains(i))
            && self.config.keeps(m.c_weight())
    }

    fn insert(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() || !self.admissible(&m) {
            return;
        }
        let v = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn config(&self) -> WoConfig {
        self.config
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn homogeneous_part(&self, k: u32) -> WOElement {
        WOElement {
            config: self.config,
            terms: self.terms.iter().filter(|(m, _)| m.degree == k).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    fn check_config(&self, other: &WOElement) {
        assert_eq!(self.config, other.config, "WO elements from different algebras");
    }

    pub fn add(&self, other: &WOElement) -> WOElement {
        self.check_config(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WOElement) -> WOElement {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> WOElement {
        let mut out = WOElement::zero(self.config);
        for (m, c) in &self.terms {
            out.insert(m.clone(), c * s);
        }
        out
    }

    /// Graded-commutative product with Koszul signs; `c̃_i² = 0`.
    pub fn mul(&self, other: &WOElement) -> WOElement {
        self.check_config(other);
        let mut out = WOElement::zero(self.config);
        for (m1, a) in &self.terms {
            for (m2, b) in &other.terms {
                if let Some((sign, m)) = mul_monomials(m1, m2) {
                    let c = a * b;
                    out.insert(m, if sign < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// `d c̃_i = c_i`, `d c_i = 0`, extended as a graded derivation.
    pub fn d(&self) -> WOElement {
        let mut out = WOElement::zero(self.config);
        for (m, coeff) in &self.terms {
            for (pos, &i) in m.tilde.iter().enumerate() {
                let mut tilde = m.tilde.clone();
                tilde.remove(pos);
                let mut c = m.c.clone();
                c[i as usize - 1] += 1;
                let v = if pos % 2 == 0 { coeff.clone() } else { -coeff.clone() };
                out.insert(Monomial::new(tilde, c), v);
            }
        }
        out
    }

    /// Coefficients as `f64`, in monomial order.
    pub fn to_f64_terms(&self) -> Vec<(Monomial, f64)> {
        use num_traits::ToPrimitive;
        self.terms.iter().map(|(m, c)| (m.clone(), c.to_f64().unwrap_or(f64::NAN))).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.config.q,
            "terms": self.terms.iter().map(|(m, c)| json!({"monomial": m.to_string(), "coeff": c.to_string()})).collect::<Vec<_>>(),
            "display": self.to_string(),
        })
    }
}

/// Product of two monomials: `None` if a `c̃` repeats.
pub fn mul_monomials(a: &Monomial, b: &Monomial) -> Option<(i32, Monomial)> {
    let mut inversions = 0usize;
    for &x in &a.tilde {
        if b.tilde.contains(&x) {
            return None;
        }
        inversions += b.tilde.iter().filter(|&&y| y < x).count();
    }
    let mut tilde: Vec<u32> = a.tilde.iter().chain(&b.tilde).copied().collect();
    tilde.sort_unstable();
    let c = a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect();
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    Some((sign, Monomial::new(tilde, c)))
}

impl fmt::Display for WOElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_unit = m.tilde.is_empty() && m.c.iter().all(|&e| e == 0);
            if is_unit {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Graded product in `WO_q`.
pub fn wo_mul(a: &WOElement, b: &WOElement) -> WOElement {
    a.mul(b)
}

/// Differential of `WO_q`.
pub fn wo_d(e: &WOElement) -> WOElement {
    e.d()
}

/// All monomials of the algebra, in monomial order.
pub fn basis(config: WoConfig) -> Vec<Monomial> {
    let q = config.q as usize;
    let mut cparts: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; q];
    fn rec(i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, cfg: &WoConfig) {
        if i == cur.len() {
            if cfg.keeps(c_weight(cur)) {
                out.push(cur.clone());
            }
            return;
        }
        loop {
            if !cfg.keeps(c_weight(cur)) {
                cur[i] = 0;
                return;
            }
            rec(i + 1, cur, out, cfg);
            cur[i] += 1;
        }
    }
    rec(0, &mut cur, &mut cparts, &config);
    let tildes = config.tilde_indices();
    let mut out = Vec::new();
    for mask in 0u32..(1 << tildes.len()) {
        let t: Vec<u32> = tildes.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &i)| i).collect();
        for c in &cparts {
            out.push(Monomial::new(t.clone(), c.clone()));
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charforms::rat;

    #[test]
    fn generators_and_differential() {
        let cfg = WoConfig::new(1);
        let t1 = WOElement::tilde(cfg, 1).unwrap();
        let c1 = WOElement::c(cfg, 1).unwrap();
        assert_eq!(wo_d(&t1), c1);
        assert!(wo_mul(&t1, &t1).is_zero());
        // d(c̃₁c₁) = c₁², truncated away at q = 1
        assert!(wo_d(&wo_mul(&t1, &c1)).is_zero());
        let cfg2 = WoConfig::new(2);
        let t = WOElement::tilde(cfg2, 1).unwrap();
        let c = WOElement::c(cfg2, 1).unwrap();
        assert_eq!(wo_d(&t.mul(&c)), c.mul(&c));
    }

    #[test]
    fn qprime_modes() {
        assert_eq!(WoConfig::new(4).tilde_indices(), vec![1, 3]);
        assert_eq!(WoConfig::new(5).tilde_indices(), vec![1, 3, 5]);
        assert_eq!(WoConfig::new(5).with_qprime(QPrime::Smallest).tilde_indices(), vec![1]);
        assert!(WOElement::tilde(WoConfig::new(3), 2).is_none());
    }

    #[test]
    fn koszul_signs() {
        let cfg = WoConfig::new(3);
        let t1 = WOElement::tilde(cfg, 1).unwrap();
        let t3 = WOElement::tilde(cfg, 3).unwrap();
        assert_eq!(t3.mul(&t1), t1.mul(&t3).scale(&rat(-1, 1)));
        let x = t1.mul(&t3);
        assert_eq!(x.d().d(), WOElement::zero(cfg));
        assert_eq!(x.to_string(), "ct1*ct3");
    }

    #[test]
    fn basis_sizes() {
        // q = 1: {1, c1} × {1, c̃1}
        assert_eq!(basis(WoConfig::new(1)).len(), 4);
        assert_eq!(basis(WoConfig::new(1).with_truncation(Truncation::Strict)).len(), 2);
        // q = 2: c-part {1, c1, c1², c2}, times {1, c̃1}
        assert_eq!(basis(WoConfig::new(2)).len(), 8);
    }
}
