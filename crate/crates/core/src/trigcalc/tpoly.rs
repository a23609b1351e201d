/// Coefficient types that a [`TPoly`] can carry.
pub trait Linear: Clone {
    fn add(&self, other: &Self) -> Self;
    fn scale_real(&self, s: f64) -> Self;
    fn is_zero(&self) -> bool;
}

/// Polynomial `Σ c_m t^m` in the interval variable `t ∈ [0,1]`.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct TPoly<X> {
    coeffs: Vec<X>,
}

impl<X: Linear> TPoly<X> {
    pub fn new(coeffs: Vec<X>) -> TPoly<X> {
        let mut p = TPoly { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> TPoly<X> {
        TPoly { coeffs: Vec::new() }
    }

    pub fn constant(x: X) -> TPoly<X> {
        TPoly::new(vec![x])
    }

    /// `a + b t`.
    pub fn linear(a: X, b: X) -> TPoly<X> {
        TPoly::new(vec![a, b])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Linear::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[X] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `t`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &TPoly<X>) -> TPoly<X> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for m in 0..n {
            out.push(match (self.coeffs.get(m), other.coeffs.get(m)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        TPoly::new(out)
    }

    pub fn scale_real(&self, s: f64) -> TPoly<X> {
        TPoly::new(self.coeffs.iter().map(|c| c.scale_real(s)).collect())
    }

    pub fn map<Y: Linear>(&self, f: impl Fn(&X) -> Y) -> TPoly<Y> {
        TPoly::new(self.coeffs.iter().map(f).collect())
    }

    /// Product with coefficient multiplication `f`.
    pub fn mul_with<Y: Linear, Z: Linear>(&self, other: &TPoly<Y>, f: impl Fn(&X, &Y) -> Z) -> TPoly<Z> {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        let mut out: Vec<Option<Z>> = vec![None; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let v = f(a, b);
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => acc.add(&v),
                    None => v,
                });
            }
        }
        TPoly::new(out.into_iter().map(|c| c.expect("every slot filled")).collect())
    }

    /// `d/dt`.
    pub fn deriv(&self) -> TPoly<X> {
        TPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, c)| c.scale_real(m as f64))
                .collect(),
        )
    }

    /// `∫₀¹ p(t) dt` using `∫ t^m = 1/(m+1)`; `zero` is returned for the zero polynomial.
    pub fn integrate01(&self, zero: X) -> X {
        self.coeffs
            .iter()
            .enumerate()
            .fold(zero, |acc, (m, c)| acc.add(&c.scale_real(1.0 / (m as f64 + 1.0))))
    }

    pub fn eval(&self, t: f64, zero: X) -> X {
        self.coeffs
            .iter()
            .rev()
            .fold(zero, |acc, c| acc.scale_real(t).add(c))
    }
}

impl Linear for f64 {
    fn add(&self, other: &f64) -> f64 {
        self + other
    }
    fn scale_real(&self, s: f64) -> f64 {
        self * s
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
}
