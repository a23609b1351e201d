use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::{json, Value};

use super::vector::VectorField;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;
use crate::trigcalc::{Linear, MatScalar, TrigPoly, TrigScalar};

/// Increasing index set `I` encoded as a bitmask (bit `j` ↔ `dx_{j+1}`).
pub type IndexSet = u16;

pub fn mask_of(indices: &[usize]) -> IndexSet {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn indices_of(mask: IndexSet) -> Vec<usize> {
    (0..16).filter(|j| mask & (1 << j) != 0).collect()
}

/// Sign of `dx_I ∧ dx_J` relative to `dx_{I∪J}`; zero when the sets meet.
pub fn wedge_sign(i: IndexSet, j: IndexSet) -> i32 {
    if i & j != 0 {
        return 0;
    }
    let mut inversions = 0;
    for b in indices_of(j) {
        inversions += (i >> (b + 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All index sets of size `k` in `{0..n}`, in increasing numeric order.
pub fn subsets(n: usize, k: usize) -> Vec<IndexSet> {
    (0u32..(1 << n))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| m as IndexSet)
        .collect()
}

/// Matrix-valued differential form `Σ_I A_I dx_I` on the `dim`-torus.
///
/// Scalar forms have rank 1. Terms are kept in increasing bitmask order and
/// exactly-zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Form {
    dim: usize,
    degree: usize,
    rank: usize,
    terms: BTreeMap<IndexSet, MatScalar>,
}

impl Form {
    pub fn zero(dim: usize, degree: usize, rank: usize) -> Form {
        assert!(degree <= dim, "degree {degree} exceeds dimension {dim}");
        Form {
            dim,
            degree,
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 form with matrix value `m`.
    pub fn function(m: MatScalar) -> Form {
        assert_eq!(m.rows(), m.cols(), "form coefficients must be square");
        let mut f = Form::zero(m.dim(), 0, m.rows());
        f.insert(0, m);
        f
    }

    pub fn scalar_function(s: TrigScalar) -> Form {
        Form::function(MatScalar::scalar(s))
    }

    pub fn one(dim: usize) -> Form {
        Form::scalar_function(TrigScalar::one(dim))
    }

    pub fn identity(dim: usize, rank: usize) -> Form {
        Form::function(MatScalar::identity(dim, rank))
    }

    /// `dx_{i1} ∧ … ∧ dx_{ik}` (0-based axes, any order).
    pub fn coordinate(dim: usize, axes: &[usize]) -> Form {
        let mut out = Form::one(dim);
        for &a in axes {
            out = out.wedge(&Form::basis_one_form(dim, a));
        }
        out
    }

    fn basis_one_form(dim: usize, axis: usize) -> Form {
        assert!(axis < dim, "axis {axis} out of range");
        let mut f = Form::zero(dim, 1, 1);
        f.insert(1 << axis, MatScalar::scalar(TrigScalar::one(dim)));
        f
    }

    /// `Σ_j c_j dx_j` from one coefficient matrix per axis.
    pub fn one_form(dim: usize, rank: usize, comps: Vec<MatScalar>) -> Form {
        assert_eq!(comps.len(), dim, "one coefficient per axis required");
        let mut f = Form::zero(dim, 1, rank);
        for (j, c) in comps.into_iter().enumerate() {
            f.insert(1 << j, c);
        }
        f
    }

    pub fn scalar_one_form(comps: Vec<TrigScalar>) -> Form {
        let dim = comps.len();
        Form::one_form(dim, 1, comps.into_iter().map(MatScalar::scalar).collect())
    }

    /// Form with a single term `entry · dx_I`.
    pub fn monomial(dim: usize, axes: &[usize], entry: MatScalar) -> Form {
        let rank = entry.rows();
        let base = Form::coordinate(dim, axes);
        let mut out = Form::zero(dim, base.degree, rank);
        for (m, c) in base.terms {
            out.insert(m, entry.scale_by(c.get(0, 0)));
        }
        out
    }

    pub fn with_term(mut self, mask: IndexSet, entry: MatScalar) -> Form {
        assert_eq!(mask.count_ones() as usize, self.degree, "index set size must equal degree");
        self.insert(mask, entry);
        self
    }

    fn insert(&mut self, mask: IndexSet, entry: MatScalar) {
        assert_eq!(entry.rows(), self.rank, "coefficient rank mismatch");
        assert_eq!(entry.dim(), self.dim, "coefficient on wrong torus");
        let merged = match self.terms.remove(&mask) {
            Some(old) => old.add(&entry),
            None => entry,
        };
        if !merged.is_zero() {
            self.terms.insert(mask, merged);
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &MatScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn component(&self, mask: IndexSet) -> Option<&MatScalar> {
        self.terms.get(&mask)
    }

    /// Scalar coefficient of `dx_I` (rank-1 forms).
    pub fn coeff(&self, mask: IndexSet) -> TrigScalar {
        assert_eq!(self.rank, 1, "scalar coefficient of a matrix-valued form");
        self.terms
            .get(&mask)
            .map_or_else(|| TrigScalar::zero(self.dim), |m| m.get(0, 0).clone())
    }

    /// Exactly zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sup of every coefficient below `tol` on the certification grid.
    pub fn is_negligible(&self, tol: f64) -> bool {
        self.terms.values().all(|m| m.is_negligible(tol))
    }

    /// Largest sup-norm of any matrix entry on its certification grid.
    pub fn sup_norm(&self) -> f64 {
        self.terms
            .values()
            .flat_map(|m| m.entries().iter().map(TrigScalar::grid_sup))
            .fold(0.0, f64::max)
    }

    /// Sup-norm of `self − other`.
    pub fn residual(&self, other: &Form) -> f64 {
        self.sub(other).sup_norm()
    }

    pub fn is_poly(&self) -> bool {
        self.terms.values().all(MatScalar::is_poly)
    }

    fn check_compatible(&self, other: &Form) {
        assert_eq!(self.dim, other.dim, "forms on tori of different dimension");
    }

    pub fn add(&self, other: &Form) -> Form {
        self.check_compatible(other);
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        assert_eq!(self.rank, other.rank, "adding forms of different rank");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: Complex64) -> Form {
        self.map_entries(|m| m.scale(s))
    }

    pub fn neg(&self) -> Form {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    /// Multiplies every coefficient by a function.
    pub fn scale_by(&self, f: &TrigScalar) -> Form {
        self.map_entries(|m| m.scale_by(f))
    }

    fn map_entries(&self, f: impl Fn(&MatScalar) -> MatScalar) -> Form {
        let mut out = Form::zero(self.dim, self.degree, self.rank);
        for (m, c) in &self.terms {
            out.insert(*m, f(c));
        }
        out
    }

    /// Left/right multiplication of every coefficient by a fixed matrix function.
    pub fn mat_left(&self, g: &MatScalar) -> Form {
        self.map_entries(|m| g.mul(m))
    }

    pub fn mat_right(&self, g: &MatScalar) -> Form {
        self.map_entries(|m| m.mul(g))
    }

    /// Exterior product; matrix coefficients multiply in order. A rank-1
    /// factor acts as a scalar on the other one.
    pub fn wedge(&self, other: &Form) -> Form {
        self.check_compatible(other);
        let rank = match (self.rank, other.rank) {
            (a, b) if a == b => a,
            (1, b) => b,
            (a, 1) => a,
            (a, b) => panic!("wedge of rank {a} and rank {b} forms"),
        };
        self.wedge_by(other, rank, |ci, cj| match (self.rank, other.rank) {
            (a, b) if a == b => ci.mul(cj),
            (1, _) => cj.scale_by(ci.get(0, 0)),
            _ => ci.scale_by(cj.get(0, 0)),
        })
    }

    /// `tr(a∧b)` without forming the off-diagonal entries of the product.
    pub fn trace_wedge(&self, other: &Form) -> Form {
        self.check_compatible(other);
        if self.rank != other.rank || self.rank == 1 {
            return self.wedge(other).trace();
        }
        self.wedge_by(other, 1, |ci, cj| MatScalar::scalar(ci.trace_mul(cj)))
    }

    fn wedge_by(&self, other: &Form, rank: usize, prod: impl Fn(&MatScalar, &MatScalar) -> MatScalar) -> Form {
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Form::zero(self.dim, self.dim, rank);
        }
        let mut out = Form::zero(self.dim, degree, rank);
        for (mi, ci) in &self.terms {
            for (mj, cj) in &other.terms {
                let s = wedge_sign(*mi, *mj);
                if s == 0 {
                    continue;
                }
                let p = prod(ci, cj);
                out.insert(mi | mj, if s > 0 { p } else { p.neg() });
            }
        }
        out
    }

    /// Graded commutator `a∧b − (−1)^{|a||b|} b∧a`.
    pub fn graded_commutator(&self, other: &Form) -> Form {
        let ab = self.wedge(other);
        let ba = other.wedge(self);
        if (self.degree * other.degree) % 2 == 0 {
            ab.sub(&ba)
        } else {
            ab.add(&ba)
        }
    }

    /// De Rham differential.
    pub fn d(&self) -> Form {
        if self.degree == self.dim {
            return Form::zero(self.dim, self.dim, self.rank);
        }
        let mut out = Form::zero(self.dim, self.degree + 1, self.rank);
        for (m, c) in &self.terms {
            for j in 0..self.dim {
                if m & (1 << j) != 0 {
                    continue;
                }
                let dc = c.deriv(j);
                if dc.is_zero() {
                    continue;
                }
                let below = (m & ((1 << j) - 1)).count_ones();
                out.insert(m | (1 << j), if below % 2 == 0 { dc } else { dc.neg() });
            }
        }
        out
    }

    /// Interior product `ι_X`.
    pub fn contract(&self, x: &VectorField) -> Form {
        assert_eq!(x.dim(), self.dim, "vector field on wrong torus");
        if self.degree == 0 {
            return Form::zero(self.dim, 0, self.rank);
        }
        let mut out = Form::zero(self.dim, self.degree - 1, self.rank);
        for (m, c) in &self.terms {
            for (pos, j) in indices_of(*m).into_iter().enumerate() {
                let xj = x.component(j);
                if xj.is_zero() {
                    continue;
                }
                let v = c.scale_by(xj);
                out.insert(m & !(1 << j), if pos % 2 == 0 { v } else { v.neg() });
            }
        }
        out
    }

    pub fn trace(&self) -> Form {
        let mut out = Form::zero(self.dim, self.degree, 1);
        for (m, c) in &self.terms {
            out.insert(*m, MatScalar::scalar(c.trace()));
        }
        out
    }

    /// Entrywise conjugation of matrix entries and of their coefficient functions.
    pub fn conj(&self) -> Form {
        self.map_entries(MatScalar::conj)
    }

    pub fn conj_transpose(&self) -> Form {
        self.map_entries(MatScalar::conj_transpose)
    }

    /// Block-diagonal sum of two matrix-valued forms of the same degree.
    pub fn block_diag(&self, other: &Form) -> Form {
        assert_eq!(self.degree, other.degree, "block sum of forms of different degree");
        let mut out = Form::zero(self.dim, self.degree, self.rank + other.rank);
        let z1 = MatScalar::zero(self.dim, self.rank, self.rank);
        let z2 = MatScalar::zero(self.dim, other.rank, other.rank);
        let masks: std::collections::BTreeSet<IndexSet> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        for m in masks {
            let a = self.terms.get(&m).unwrap_or(&z1);
            let b = other.terms.get(&m).unwrap_or(&z2);
            out.insert(m, a.block_diag(b));
        }
        out
    }

    /// Pullback along the torus map `x ↦ M x` with integer matrix `M`.
    pub fn pullback(&self, m: &[Vec<i32>]) -> Form {
        assert_eq!(m.len(), self.dim, "pullback matrix must match the torus");
        let dy: Vec<Form> = (0..self.dim)
            .map(|i| {
                Form::scalar_one_form(
                    (0..self.dim)
                        .map(|j| TrigScalar::real(self.dim, m[i][j] as f64))
                        .collect(),
                )
            })
            .collect();
        let mut out = Form::zero(self.dim, self.degree, self.rank);
        for (mask, c) in &self.terms {
            let basis = indices_of(*mask)
                .into_iter()
                .fold(Form::one(self.dim), |acc, i| acc.wedge(&dy[i]));
            let pc = c.pullback(m);
            for (bm, bc) in &basis.terms {
                out.insert(*bm, pc.scale_by(bc.get(0, 0)));
            }
        }
        out
    }

    /// `∫_M` of a top-degree scalar form, with the quadrature error estimate.
    pub fn integrate_top_with_error(&self, tol: &Tolerances) -> Result<(Complex64, f64)> {
        if self.degree != self.dim {
            return Err(Error::DegreeMismatch {
                expected: self.dim,
                found: self.degree,
            });
        }
        if self.rank != 1 {
            return Err(Error::DimensionMismatch(format!(
                "integrand must be scalar, has rank {}",
                self.rank
            )));
        }
        self.coeff(((1u32 << self.dim) - 1) as IndexSet).integrate(tol)
    }

    pub fn integrate_top(&self) -> Result<Complex64> {
        Ok(self.integrate_top_with_error(&Tolerances::default())?.0)
    }

    /// Torus means of every coefficient, in bitmask order over all index sets
    /// of this degree. These are the pairings with the constant closed forms,
    /// which span the cohomology of the torus.
    pub fn periods(&self, tol: &Tolerances) -> Result<Vec<Complex64>> {
        assert_eq!(self.rank, 1, "periods of a matrix-valued form");
        subsets(self.dim, self.degree)
            .into_iter()
            .map(|m| Ok(self.coeff(m).integrate(tol)?.0))
            .collect()
    }

    /// Largest coefficient difference to `other` (an exact, grid-free test
    /// on the polynomial subring).
    pub fn max_coeff_diff(&self, other: &Form) -> f64 {
        let d = self.sub(other);
        d.terms
            .values()
            .map(|m| m.entries().iter().map(|e| e.num().max_coeff()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }

    pub fn bandwidth(&self) -> Vec<u32> {
        let mut bw = vec![0; self.dim];
        for m in self.terms.values() {
            for (b, v) in bw.iter_mut().zip(m.bandwidth()) {
                *b = (*b).max(v);
            }
        }
        bw
    }

    /// Re-tags a zero form with another degree (no-op on nonzero forms of that degree).
    pub fn zero_of_degree(&self, degree: usize) -> Form {
        Form::zero(self.dim, degree.min(self.dim), self.rank)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "degree": self.degree,
            "rank": self.rank,
            "terms": self.terms.iter().map(|(m, c)| json!({
                "idx": indices_of(*m).into_iter().map(|i| i + 1).collect::<Vec<_>>(),
                "entry": c.to_json(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Reads `{"dim","degree","rank","terms":[{"idx":[…],"entry":…}]}` with
    /// 1-based axis indices; `idx` may be in any order (sign applied).
    pub fn from_json(v: &Value) -> Result<Form> {
        let get = |k: &str| {
            v.get(k)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| Error::Domain(format!("form: missing integer field \"{k}\"")))
        };
        let dim = get("dim")?;
        if dim == 0 || dim > crate::trigcalc::MAX_DIM {
            return Err(Error::Domain(format!("form: dimension {dim} out of range")));
        }
        let degree = get("degree")?;
        if degree > dim {
            return Err(Error::DegreeMismatch { expected: dim, found: degree });
        }
        let rank = v.get("rank").and_then(Value::as_u64).unwrap_or(1) as usize;
        let mut out = Form::zero(dim, degree, rank);
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Domain("form: missing \"terms\" list".into()))?;
        for t in terms {
            let idx: Vec<usize> = t
                .get("idx")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Domain("form term: missing \"idx\"".into()))?
                .iter()
                .map(|i| {
                    i.as_u64()
                        .filter(|&i| i >= 1 && (i as usize) <= dim)
                        .map(|i| i as usize - 1)
                        .ok_or_else(|| Error::Domain(format!("form term: index {i} outside 1..={dim}")))
                })
                .collect::<Result<_>>()?;
            if idx.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: idx.len(),
                });
            }
            let entry = MatScalar::from_json(
                t.get("entry")
                    .ok_or_else(|| Error::Domain("form term: missing \"entry\"".into()))?,
                dim,
            )?;
            if entry.rows() != rank || entry.cols() != rank {
                return Err(Error::DimensionMismatch(format!(
                    "form term entry is {}x{}, rank is {rank}",
                    entry.rows(),
                    entry.cols()
                )));
            }
            out = out.add(&Form::monomial(dim, &idx, entry));
        }
        Ok(out)
    }
}

impl Linear for Form {
    fn add(&self, other: &Form) -> Form {
        Form::add(self, other)
    }
    fn scale_real(&self, s: f64) -> Form {
        self.scale(Complex64::new(s, 0.0))
    }
    fn is_zero(&self) -> bool {
        Form::is_zero(self)
    }
}

/// Scalar 1-form `Σ_j p_j dx_j` with polynomial coefficients.
pub fn poly_one_form(comps: Vec<TrigPoly>) -> Form {
    Form::scalar_one_form(comps.into_iter().map(TrigScalar::poly).collect())
}
