use nalgebra::DMatrix;
use num_complex::Complex64;

use super::poly::TrigPoly;
use super::scalar::TrigScalar;

/// Dense matrix of [`TrigScalar`] entries, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct MatScalar {
    dim: usize,
    rows: usize,
    cols: usize,
    entries: Vec<TrigScalar>,
}

impl MatScalar {
    pub fn zero(dim: usize, rows: usize, cols: usize) -> MatScalar {
        MatScalar {
            dim,
            rows,
            cols,
            entries: vec![TrigScalar::zero(dim); rows * cols],
        }
    }

    pub fn identity(dim: usize, n: usize) -> MatScalar {
        let mut m = MatScalar::zero(dim, n, n);
        for i in 0..n {
            m.set(i, i, TrigScalar::one(dim));
        }
        m
    }

    /// 1×1 matrix.
    pub fn scalar(s: TrigScalar) -> MatScalar {
        MatScalar {
            dim: s.dim(),
            rows: 1,
            cols: 1,
            entries: vec![s],
        }
    }

    pub fn from_entries(dim: usize, rows: usize, cols: usize, entries: Vec<TrigScalar>) -> MatScalar {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        assert!(entries.iter().all(|e| e.dim() == dim), "entry on wrong torus");
        MatScalar {
            dim,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_constant(dim: usize, m: &DMatrix<Complex64>) -> MatScalar {
        let mut out = MatScalar::zero(dim, m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out.set(i, j, TrigScalar::constant(dim, m[(i, j)]));
            }
        }
        out
    }

    /// `p · E` for a constant matrix `E`.
    pub fn poly_times(p: &TrigPoly, m: &DMatrix<Complex64>) -> MatScalar {
        let dim = p.dim();
        let mut out = MatScalar::zero(dim, m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out.set(i, j, TrigScalar::poly(p.scale(m[(i, j)])));
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TrigScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TrigScalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[TrigScalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TrigScalar::is_zero)
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| e.is_negligible(tol))
    }

    pub fn is_poly(&self) -> bool {
        self.entries.iter().all(TrigScalar::is_poly)
    }

    fn zip(&self, other: &MatScalar, f: impl Fn(&TrigScalar, &TrigScalar) -> TrigScalar) -> MatScalar {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shape mismatch"
        );
        MatScalar {
            dim: self.dim,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn map(&self, f: impl Fn(&TrigScalar) -> TrigScalar) -> MatScalar {
        MatScalar {
            dim: self.dim,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &MatScalar) -> MatScalar {
        self.zip(other, TrigScalar::add)
    }

    pub fn sub(&self, other: &MatScalar) -> MatScalar {
        self.zip(other, TrigScalar::sub)
    }

    pub fn mul(&self, other: &MatScalar) -> MatScalar {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = MatScalar::zero(self.dim, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = TrigScalar::zero(self.dim);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `tr(self·other)`.
    pub fn trace_mul(&self, other: &MatScalar) -> TrigScalar {
        assert!(self.cols == other.rows && self.rows == other.cols, "trace of a non-square product");
        let mut acc = TrigScalar::zero(self.dim);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, i));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
        }
        acc
    }

    pub fn scale(&self, s: Complex64) -> MatScalar {
        self.map(|e| e.scale(s))
    }

    pub fn scale_by(&self, s: &TrigScalar) -> MatScalar {
        self.map(|e| e.mul(s))
    }

    pub fn neg(&self) -> MatScalar {
        self.map(TrigScalar::neg)
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> MatScalar {
        self.map(TrigScalar::conj)
    }

    pub fn transpose(&self) -> MatScalar {
        let mut out = MatScalar::zero(self.dim, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> MatScalar {
        self.transpose().conj()
    }

    pub fn trace(&self) -> TrigScalar {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).fold(TrigScalar::zero(self.dim), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn deriv(&self, axis: usize) -> MatScalar {
        self.map(|e| e.deriv(axis))
    }

    pub fn eval(&self, x: &[f64]) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(x))
    }

    /// Constant value if every entry is a constant polynomial.
    pub fn as_constant(&self) -> Option<DMatrix<Complex64>> {
        if self.entries.iter().all(TrigScalar::is_constant) {
            Some(DMatrix::from_fn(self.rows, self.cols, |i, j| {
                self.get(i, j).num().constant_term()
            }))
        } else {
            None
        }
    }

    pub fn block_diag(&self, other: &MatScalar) -> MatScalar {
        let mut out = MatScalar::zero(self.dim, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn pullback(&self, m: &[Vec<i32>]) -> MatScalar {
        self.map(|e| e.pullback(m))
    }

    pub fn bandwidth(&self) -> Vec<u32> {
        let mut bw = vec![0u32; self.dim];
        for e in &self.entries {
            for (b, v) in bw.iter_mut().zip(e.bandwidth()) {
                *b = (*b).max(v);
            }
        }
        bw
    }

    /// Largest coefficient of any entry of `self − other`.
    pub fn max_coeff_diff(&self, other: &MatScalar) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.max_coeff_diff(b))
            .fold(0.0, f64::max)
    }
}
