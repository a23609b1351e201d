use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Value};

use super::filtration::filtration_degree;
use super::foliation::Foliation;
use super::form::Form;
use super::tform::TForm;
use crate::error::{Error, Result};

/// Operations shared by forms on `M` and on the cylinder `I×M`.
pub trait FormAlgebra: Clone {
    fn degree(&self) -> usize;
    fn rank(&self) -> usize;
    /// Largest degree a nonzero element can have.
    fn top_degree(&self) -> usize;
    /// Scalar unit on the same space.
    fn unit_like(&self) -> Self;
    fn zero_like(&self, degree: usize, rank: usize) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, s: Complex64) -> Self;
    fn wedge(&self, other: &Self) -> Self;
    fn trace(&self) -> Self;
    fn trace_wedge(&self, other: &Self) -> Self {
        self.wedge(other).trace()
    }
    fn is_zero(&self) -> bool;
}

impl FormAlgebra for Form {
    fn degree(&self) -> usize {
        Form::degree(self)
    }
    fn rank(&self) -> usize {
        Form::rank(self)
    }
    fn top_degree(&self) -> usize {
        self.dim()
    }
    fn unit_like(&self) -> Form {
        Form::one(self.dim())
    }
    fn zero_like(&self, degree: usize, rank: usize) -> Form {
        Form::zero(self.dim(), degree.min(self.dim()), rank)
    }
    fn add(&self, other: &Form) -> Form {
        Form::add(self, other)
    }
    fn scale(&self, s: Complex64) -> Form {
        Form::scale(self, s)
    }
    fn wedge(&self, other: &Form) -> Form {
        Form::wedge(self, other)
    }
    fn trace(&self) -> Form {
        Form::trace(self)
    }
    fn trace_wedge(&self, other: &Form) -> Form {
        Form::trace_wedge(self, other)
    }
    fn is_zero(&self) -> bool {
        Form::is_zero(self)
    }
}

impl FormAlgebra for TForm {
    fn degree(&self) -> usize {
        TForm::degree(self)
    }
    fn rank(&self) -> usize {
        TForm::rank(self)
    }
    fn top_degree(&self) -> usize {
        self.dim() + 1
    }
    fn unit_like(&self) -> TForm {
        TForm::one(self.dim())
    }
    fn zero_like(&self, degree: usize, rank: usize) -> TForm {
        TForm::zero(self.dim(), degree.min(self.dim() + 1), rank)
    }
    fn add(&self, other: &TForm) -> TForm {
        TForm::add(self, other)
    }
    fn scale(&self, s: Complex64) -> TForm {
        TForm::scale(self, s)
    }
    fn wedge(&self, other: &TForm) -> TForm {
        TForm::wedge(self, other)
    }
    fn trace(&self) -> TForm {
        TForm::trace(self)
    }
    fn trace_wedge(&self, other: &TForm) -> TForm {
        TForm::trace_wedge(self, other)
    }
    fn is_zero(&self) -> bool {
        TForm::is_zero(self)
    }
}

/// Which product complex a sequence lives in.
#[derive(Clone, Debug, PartialEq)]
pub enum Flavor {
    /// `DD^per`: no constraint on the entries.
    Periodic,
    /// `DD⁻`: entry `p` lies in `F^p` for the given foliation.
    Negative(Foliation),
}

/// Finite family `(ω_p)` with `deg ω_p = total_degree + 2p`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedFormSequence {
    dim: usize,
    total_degree: i32,
    flavor: Flavor,
    entries: BTreeMap<i32, Form>,
}

impl GradedFormSequence {
    pub fn periodic(dim: usize, total_degree: i32, entries: BTreeMap<i32, Form>) -> Result<GradedFormSequence> {
        let s = GradedFormSequence {
            dim,
            total_degree,
            flavor: Flavor::Periodic,
            entries: entries.into_iter().filter(|(_, f)| !f.is_zero()).collect(),
        };
        s.check_degrees()?;
        Ok(s)
    }

    /// Builds a `DD⁻` sequence, verifying `entry(p) ∈ F^p` at tolerance `tol`.
    pub fn negative(
        dim: usize,
        total_degree: i32,
        entries: BTreeMap<i32, Form>,
        f: &Foliation,
        tol: f64,
    ) -> Result<GradedFormSequence> {
        let s = GradedFormSequence {
            dim,
            total_degree,
            flavor: Flavor::Negative(f.clone()),
            entries: entries.into_iter().filter(|(_, f)| !f.is_zero()).collect(),
        };
        s.check_degrees()?;
        s.check_filtration(tol)?;
        Ok(s)
    }

    pub fn unit(dim: usize) -> GradedFormSequence {
        GradedFormSequence {
            dim,
            total_degree: 0,
            flavor: Flavor::Periodic,
            entries: BTreeMap::from([(0, Form::one(dim))]),
        }
    }

    fn check_degrees(&self) -> Result<()> {
        for (p, f) in &self.entries {
            let want = self.total_degree + 2 * p;
            if want < 0 || f.degree() as i32 != want {
                return Err(Error::DegreeMismatch {
                    expected: want.max(0) as usize,
                    found: f.degree(),
                });
            }
            if f.dim() != self.dim {
                return Err(Error::DimensionMismatch("sequence entry on wrong torus".into()));
            }
        }
        Ok(())
    }

    fn check_filtration(&self, tol: f64) -> Result<()> {
        if let Flavor::Negative(fol) = &self.flavor {
            for (p, f) in &self.entries {
                let found = filtration_degree(f, fol, tol);
                if found < *p {
                    return Err(Error::Filtration { p: *p, found });
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn total_degree(&self) -> i32 {
        self.total_degree
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn entries(&self) -> &BTreeMap<i32, Form> {
        &self.entries
    }

    /// Entry `p`, or the zero form of the matching degree.
    pub fn entry(&self, p: i32) -> Form {
        let deg = (self.total_degree + 2 * p).clamp(0, self.dim as i32) as usize;
        self.entries.get(&p).cloned().unwrap_or_else(|| Form::zero(self.dim, deg, 1))
    }

    /// Entry of form-degree `k`, if that degree occurs in the sequence.
    pub fn degree_component(&self, k: usize) -> Form {
        let diff = k as i32 - self.total_degree;
        if diff % 2 != 0 {
            return Form::zero(self.dim, k.min(self.dim), 1);
        }
        self.entry(diff / 2)
    }

    /// Forgets the filtration constraint.
    pub fn to_periodic(&self) -> GradedFormSequence {
        GradedFormSequence {
            flavor: Flavor::Periodic,
            ..self.clone()
        }
    }

    /// Componentwise wedge product; `DD⁻ ∧ DD⁻` stays in `DD⁻` and is re-verified.
    pub fn dd_wedge(&self, other: &GradedFormSequence, tol: f64) -> Result<GradedFormSequence> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch("sequences on different tori".into()));
        }
        let total = self.total_degree + other.total_degree;
        let mut entries: BTreeMap<i32, Form> = BTreeMap::new();
        for (q, a) in &self.entries {
            for (r, b) in &other.entries {
                if a.degree() + b.degree() > self.dim {
                    continue;
                }
                let w = a.wedge(b);
                let p = q + r;
                let e = match entries.remove(&p) {
                    Some(old) => old.add(&w),
                    None => w,
                };
                entries.insert(p, e);
            }
        }
        match (&self.flavor, &other.flavor) {
            (Flavor::Negative(f), Flavor::Negative(_)) => GradedFormSequence::negative(self.dim, total, entries, f, tol),
            _ => GradedFormSequence::periodic(self.dim, total, entries),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "total_degree": self.total_degree,
            "flavor": match self.flavor { Flavor::Periodic => "DD_PER", Flavor::Negative(_) => "DD_MINUS" },
            "entries": self.entries.iter().map(|(p, f)| json!({"p": p, "form": f.to_json()})).collect::<Vec<_>>(),
        })
    }
}
