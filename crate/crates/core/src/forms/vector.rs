use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::trigcalc::TrigScalar;

/// Complex vector field `Σ_j v_j ∂_j` on the torus.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    comps: Vec<TrigScalar>,
}

impl VectorField {
    pub fn new(comps: Vec<TrigScalar>) -> VectorField {
        assert!(!comps.is_empty(), "vector field needs at least one component");
        let dim = comps.len();
        assert!(comps.iter().all(|c| c.dim() == dim), "component on wrong torus");
        VectorField { comps }
    }

    pub fn zero(dim: usize) -> VectorField {
        VectorField::new(vec![TrigScalar::zero(dim); dim])
    }

    /// `∂_axis`.
    pub fn coordinate(dim: usize, axis: usize) -> VectorField {
        let mut v = VectorField::zero(dim);
        v.comps[axis] = TrigScalar::one(dim);
        v
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, j: usize) -> &TrigScalar {
        &self.comps[j]
    }

    pub fn components(&self) -> &[TrigScalar] {
        &self.comps
    }

    /// Directional derivative `X(f)`.
    pub fn apply(&self, f: &TrigScalar) -> TrigScalar {
        self.comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(TrigScalar::zero(self.dim()), |acc, (j, c)| acc.add(&c.mul(&f.deriv(j))))
    }

    /// Lie bracket `[X, Y]`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        VectorField::new(
            (0..self.dim())
                .map(|j| self.apply(&other.comps[j]).sub(&other.apply(&self.comps[j])))
                .collect(),
        )
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField::new(self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale_by(&self, f: &TrigScalar) -> VectorField {
        VectorField::new(self.comps.iter().map(|c| c.mul(f)).collect())
    }

    pub fn conj(&self) -> VectorField {
        VectorField::new(self.comps.iter().map(TrigScalar::conj).collect())
    }

    pub fn eval(&self, x: &[f64]) -> Vec<Complex64> {
        self.comps.iter().map(|c| c.eval(x)).collect()
    }

    pub fn bandwidth(&self) -> Vec<u32> {
        let mut bw = vec![0; self.dim()];
        for c in &self.comps {
            for (b, v) in bw.iter_mut().zip(c.bandwidth()) {
                *b = (*b).max(v);
            }
        }
        bw
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.comps.iter().map(TrigScalar::to_json).collect())
    }

    pub fn from_json(v: &Value, dim: usize) -> Result<VectorField> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Domain("vector field: expected a list of components".into()))?;
        if arr.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "vector field has {} components on T^{dim}",
                arr.len()
            )));
        }
        Ok(VectorField::new(
            arr.iter().map(|c| TrigScalar::from_json(c, dim)).collect::<Result<_>>()?,
        ))
    }
}
