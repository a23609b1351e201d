use num_complex::Complex64;

use super::form::Form;
use crate::trigcalc::TPoly;

/// Form `α(t) + dt∧β(t)` on the cylinder `[0,1]×T^n`, polynomial in `t`.
///
/// `degree` is the total degree: `α` has degree `degree`, `β` has `degree − 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TForm {
    dim: usize,
    degree: usize,
    rank: usize,
    alpha: TPoly<Form>,
    beta: TPoly<Form>,
}

impl TForm {
    pub fn new(dim: usize, degree: usize, rank: usize, alpha: TPoly<Form>, beta: TPoly<Form>) -> TForm {
        assert!(degree <= dim + 1, "degree {degree} exceeds cylinder dimension");
        for a in alpha.coeffs() {
            assert_eq!((a.degree(), a.rank()), (degree, rank), "α component has wrong degree/rank");
        }
        for b in beta.coeffs() {
            assert_eq!((b.degree() + 1, b.rank()), (degree, rank), "β component has wrong degree/rank");
        }
        TForm {
            dim,
            degree,
            rank,
            alpha,
            beta,
        }
    }

    pub fn zero(dim: usize, degree: usize, rank: usize) -> TForm {
        TForm::new(dim, degree, rank, TPoly::zero(), TPoly::zero())
    }

    /// Pullback of a form on `M` along the projection (constant in `t`, no `dt`).
    pub fn from_form(f: &Form) -> TForm {
        TForm::new(f.dim(), f.degree(), f.rank(), TPoly::constant(f.clone()), TPoly::zero())
    }

    pub fn one(dim: usize) -> TForm {
        TForm::from_form(&Form::one(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn alpha(&self) -> &TPoly<Form> {
        &self.alpha
    }

    pub fn beta(&self) -> &TPoly<Form> {
        &self.beta
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.beta.is_zero()
    }

    fn alpha_zero(&self) -> Form {
        Form::zero(self.dim, self.degree.min(self.dim), self.rank)
    }

    fn beta_zero(&self) -> Form {
        Form::zero(self.dim, self.degree.saturating_sub(1), self.rank)
    }

    pub fn add(&self, other: &TForm) -> TForm {
        assert_eq!((self.degree, self.rank), (other.degree, other.rank), "adding mismatched cylinder forms");
        TForm {
            alpha: self.alpha.add(&other.alpha),
            beta: self.beta.add(&other.beta),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &TForm) -> TForm {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> TForm {
        TForm {
            alpha: self.alpha.map(|f| f.scale(s)),
            beta: self.beta.map(|f| f.scale(s)),
            ..self.clone()
        }
    }

    /// `(α₁ + dt∧β₁)∧(α₂ + dt∧β₂) = α₁∧α₂ + dt∧(β₁∧α₂ + (−1)^{|α₁|} α₁∧β₂)`.
    pub fn wedge(&self, other: &TForm) -> TForm {
        let degree = self.degree + other.degree;
        let rank = if self.rank == 1 { other.rank } else { self.rank };
        if degree > self.dim + 1 {
            return TForm::zero(self.dim, self.dim + 1, rank);
        }
        let alpha = if degree <= self.dim {
            self.alpha.mul_with(&other.alpha, Form::wedge)
        } else {
            TPoly::zero()
        };
        let b1 = self.beta.mul_with(&other.alpha, Form::wedge);
        let sign = if self.degree % 2 == 0 { 1.0 } else { -1.0 };
        let b2 = self.alpha.mul_with(&other.beta, Form::wedge).scale_real(sign);
        TForm::new(self.dim, degree, rank, alpha, b1.add(&b2))
    }

    /// `d(α + dt∧β) = d_M α + dt∧(∂_t α − d_M β)`.
    pub fn d(&self) -> TForm {
        let degree = self.degree + 1;
        if degree > self.dim + 1 {
            return TForm::zero(self.dim, self.dim + 1, self.rank);
        }
        let alpha = if degree <= self.dim {
            self.alpha.map(Form::d)
        } else {
            TPoly::zero()
        };
        let beta = self.alpha.deriv().add(&self.beta.map(|b| b.d().neg()));
        TForm::new(self.dim, degree, self.rank, alpha, beta)
    }

    /// `tr(self∧other)`.
    pub fn trace_wedge(&self, other: &TForm) -> TForm {
        let degree = self.degree + other.degree;
        if degree > self.dim + 1 {
            return TForm::zero(self.dim, self.dim + 1, 1);
        }
        let alpha = if degree <= self.dim {
            self.alpha.mul_with(&other.alpha, Form::trace_wedge)
        } else {
            TPoly::zero()
        };
        let b1 = self.beta.mul_with(&other.alpha, Form::trace_wedge);
        let sign = if self.degree % 2 == 0 { 1.0 } else { -1.0 };
        let b2 = self.alpha.mul_with(&other.beta, Form::trace_wedge).scale_real(sign);
        TForm::new(self.dim, degree, 1, alpha, b1.add(&b2))
    }

    pub fn trace(&self) -> TForm {
        TForm {
            rank: 1,
            alpha: self.alpha.map(Form::trace),
            beta: self.beta.map(Form::trace),
            ..self.clone()
        }
    }

    /// Restriction to the slice `{t}×M`.
    pub fn restrict(&self, t: f64) -> Form {
        self.alpha.eval(t, self.alpha_zero())
    }

    /// Fiber integral `∫₀¹ β(t) dt`.
    pub fn fiber_integrate(&self) -> Form {
        if self.degree == 0 {
            return Form::zero(self.dim, 0, self.rank);
        }
        self.beta.integrate01(self.beta_zero())
    }
}
