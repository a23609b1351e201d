use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forms::{Form, TForm};
use crate::trigcalc::{complex_from_json, complex_to_json, MatScalar, TPoly};

/// Constant positive-definite hermitian metric `h(φ,ψ) = ψ† H φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermMetric {
    h: DMatrix<Complex64>,
    h_inv: DMatrix<Complex64>,
}

impl HermMetric {
    pub fn new(h: DMatrix<Complex64>) -> Result<HermMetric> {
        if h.nrows() != h.ncols() || h.nrows() == 0 {
            return Err(Error::DimensionMismatch("metric must be a nonempty square matrix".into()));
        }
        let asym = (&h - h.adjoint()).iter().map(|c| c.norm()).fold(0.0, f64::max);
        if asym > 1e-12 {
            return Err(Error::Domain(format!("metric is not hermitian (asymmetry {asym:.3e})")));
        }
        let min_eig = h.clone().symmetric_eigen().eigenvalues.min();
        if min_eig <= 0.0 {
            return Err(Error::Domain(format!("metric is not positive definite (eigenvalue {min_eig:.3e})")));
        }
        let h_inv = h
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Domain("metric is not positive definite".into()))?
            .inverse();
        Ok(HermMetric { h, h_inv })
    }

    pub fn identity(rank: usize) -> HermMetric {
        HermMetric::new(DMatrix::identity(rank, rank)).expect("identity is a metric")
    }

    pub fn rank(&self) -> usize {
        self.h.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.h
    }

    pub fn inverse(&self) -> &DMatrix<Complex64> {
        &self.h_inv
    }

    pub fn is_real(&self) -> bool {
        self.h.iter().all(|c| c.im.abs() < 1e-15)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rank())
                .map(|i| Value::Array((0..self.rank()).map(|j| complex_to_json(self.h[(i, j)])).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<HermMetric> {
        let rows = v
            .as_array()
            .ok_or_else(|| Error::Domain("metric: expected a nested list".into()))?;
        let n = rows.len();
        let mut h = DMatrix::zeros(n, n);
        for (i, r) in rows.iter().enumerate() {
            let r = r
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| Error::DimensionMismatch("metric must be square".into()))?;
            for (j, e) in r.iter().enumerate() {
                h[(i, j)] = complex_from_json(e)?;
            }
        }
        HermMetric::new(h)
    }
}

/// Connection `∇ = d + A` on a trivialized bundle of rank `rank`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection {
    a: Form,
    real: bool,
}

impl Connection {
    /// `real` marks a real connection form, whose Pontryagin and Â forms are defined;
    /// it is verified.
    pub fn new(a: Form, real: bool) -> Result<Connection> {
        if a.degree() != 1 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: a.degree(),
            });
        }
        if real {
            let res = a.conj().residual(&a);
            if res > 1e-12 {
                return Err(Error::verification("reality of the connection form", res, 1e-12));
            }
        }
        Ok(Connection { a, real })
    }

    pub fn trivial(dim: usize, rank: usize) -> Connection {
        Connection {
            a: Form::zero(dim, 1, rank),
            real: true,
        }
    }

    pub fn form(&self) -> &Form {
        &self.a
    }

    pub fn rank(&self) -> usize {
        self.a.rank()
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// `R = dA + A∧A`.
    pub fn curvature(&self) -> Form {
        self.a.d().add(&self.a.wedge(&self.a))
    }

    pub fn is_flat(&self, tol: f64) -> bool {
        self.curvature().is_negligible(tol)
    }

    /// `A* = −H⁻¹ A† H`.
    pub fn adjoint(&self, h: &HermMetric) -> Result<Connection> {
        if h.rank() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "metric of rank {} on a bundle of rank {}",
                h.rank(),
                self.rank()
            )));
        }
        let dim = self.dim();
        let hm = MatScalar::from_constant(dim, h.matrix());
        let hi = MatScalar::from_constant(dim, &(-h.inverse()));
        Ok(Connection {
            a: self.a.conj_transpose().mat_left(&hi).mat_right(&hm),
            real: self.real && h.is_real(),
        })
    }

    /// `½(A + A*)`.
    pub fn unitarize(&self, h: &HermMetric) -> Result<Connection> {
        let star = self.adjoint(h)?;
        Ok(Connection {
            a: self.a.add(&star.a).scale(Complex64::new(0.5, 0.0)),
            real: self.real && star.real,
        })
    }

    /// Sup-norm of `A − A*`; zero iff the connection is unitary for `h`.
    pub fn unitarity_defect(&self, h: &HermMetric) -> Result<f64> {
        Ok(self.a.residual(&self.adjoint(h)?.a))
    }

    /// `∇ ⊕ ∇'`.
    pub fn direct_sum(&self, other: &Connection) -> Connection {
        Connection {
            a: self.a.block_diag(&other.a),
            real: self.real && other.real,
        }
    }

    /// Gauge transform by a constant invertible `g`: `g⁻¹ A g` (`dg = 0`).
    pub fn gauge(&self, g: &DMatrix<Complex64>) -> Result<Connection> {
        let gi = g
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Domain("gauge transformation is not invertible".into()))?;
        let dim = self.dim();
        let a = self
            .a
            .mat_left(&MatScalar::from_constant(dim, &gi))
            .mat_right(&MatScalar::from_constant(dim, g));
        let real = self.real && g.iter().all(|c| c.im == 0.0);
        Ok(Connection { a, real })
    }

    /// `A + δ` for a matrix-valued 1-form `δ` (e.g. `κ⊗B` or an annihilator term).
    pub fn shifted(&self, delta: &Form) -> Result<Connection> {
        let a = self.a.add(delta);
        let real = self.real && delta.conj().residual(delta) < 1e-12;
        Connection::new(a, real)
    }

    pub fn pullback(&self, m: &[Vec<i32>]) -> Connection {
        Connection {
            a: self.a.pullback(m),
            real: self.real,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"rank": self.rank(), "A": self.a.to_json(), "real": self.real})
    }

    pub fn from_json(v: &Value) -> Result<Connection> {
        let a = Form::from_json(v.get("A").ok_or_else(|| Error::Domain("connection: missing \"A\"".into()))?)?;
        if let Some(r) = v.get("rank").and_then(Value::as_u64) {
            if r as usize != a.rank() {
                return Err(Error::DimensionMismatch(format!(
                    "connection rank {r} but A has rank {}",
                    a.rank()
                )));
            }
        }
        Connection::new(a, v.get("real").and_then(Value::as_bool).unwrap_or(false))
    }
}

/// Connection on `π*V → [0,1]×M` with no `dt`-component, `A_t` polynomial in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct TConnection {
    dim: usize,
    rank: usize,
    a_t: TPoly<Form>,
    real: bool,
}

impl TConnection {
    pub fn new(dim: usize, rank: usize, a_t: TPoly<Form>, real: bool) -> TConnection {
        TConnection { dim, rank, a_t, real }
    }

    pub fn form(&self) -> &TPoly<Form> {
        &self.a_t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// `R̃ = (d_M A_t + A_t∧A_t) + dt∧∂_t A_t`.
    pub fn curvature(&self) -> TForm {
        let alpha = self.a_t.map(Form::d).add(&self.a_t.mul_with(&self.a_t, Form::wedge));
        TForm::new(self.dim, 2, self.rank, alpha, self.a_t.deriv())
    }

    pub fn restrict(&self, t: f64) -> Connection {
        Connection {
            a: self.a_t.eval(t, Form::zero(self.dim, 1, self.rank)),
            real: self.real,
        }
    }
}

/// `A_t = (1−t)A₀ + tA₁`.
pub fn interpolate(c0: &Connection, c1: &Connection) -> TConnection {
    assert_eq!((c0.dim(), c0.rank()), (c1.dim(), c1.rank()), "interpolating mismatched connections");
    let diff = c1.a.sub(&c0.a);
    TConnection::new(
        c0.dim(),
        c0.rank(),
        TPoly::linear(c0.a.clone(), diff),
        c0.real && c1.real,
    )
}

/// `A_t = A₀ + φ(t)(A₁ − A₀)` with `φ(t) = 3t² − 2t³`.
pub fn interpolate_cubic(c0: &Connection, c1: &Connection) -> TConnection {
    assert_eq!((c0.dim(), c0.rank()), (c1.dim(), c1.rank()), "interpolating mismatched connections");
    let diff = c1.a.sub(&c0.a);
    let zero = Form::zero(c0.dim(), 1, c0.rank());
    TConnection::new(
        c0.dim(),
        c0.rank(),
        TPoly::new(vec![
            c0.a.clone(),
            zero.clone(),
            diff.scale(Complex64::new(3.0, 0.0)),
            diff.scale(Complex64::new(-2.0, 0.0)),
        ]),
        c0.real && c1.real,
    )
}
