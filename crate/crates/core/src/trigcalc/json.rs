//! JSON encodings: a series is a list of `{"k","re","im"}` terms, a quotient is
//! `{"num","den"}` (a bare list is accepted for `den = 1`), a matrix is a
//! nested list of rows.

use num_complex::Complex64;
use serde_json::{json, Value};

use super::matrix::MatScalar;
use super::poly::TrigPoly;
use super::scalar::TrigScalar;
use crate::error::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad(format!("{what}: expected a number")))
}

/// Reads a complex number given as `{"re","im"}` or as a bare real.
pub fn complex_from_json(v: &Value) -> Result<Complex64> {
    match v {
        Value::Number(_) => Ok(Complex64::new(number(v, "complex")?, 0.0)),
        Value::Object(o) => Ok(Complex64::new(
            o.get("re").map(|x| number(x, "re")).transpose()?.unwrap_or(0.0),
            o.get("im").map(|x| number(x, "im")).transpose()?.unwrap_or(0.0),
        )),
        _ => Err(bad("complex: expected {\"re\",\"im\"} or a number")),
    }
}

pub fn complex_to_json(c: Complex64) -> Value {
    json!({"re": c.re, "im": c.im})
}

impl TrigPoly {
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(k, c)| json!({"k": k.to_vec(self.dim()), "re": c.re, "im": c.im}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value, dim: usize) -> Result<TrigPoly> {
        let arr = v.as_array().ok_or_else(|| bad("trig polynomial: expected a list of terms"))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let k = t
                .get("k")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term: missing frequency list \"k\""))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .and_then(|i| i32::try_from(i).ok())
                        .ok_or_else(|| bad("term: frequencies must be integers"))
                })
                .collect::<Result<Vec<i32>>>()?;
            let c = complex_from_json(t)?;
            terms.push((k, c));
        }
        TrigPoly::from_terms(dim, terms)
    }
}

impl TrigScalar {
    pub fn to_json(&self) -> Value {
        json!({"num": self.num().to_json(), "den": self.den_or_one().to_json()})
    }

    pub fn from_json(v: &Value, dim: usize) -> Result<TrigScalar> {
        match v {
            Value::Array(_) => Ok(TrigScalar::poly(TrigPoly::from_json(v, dim)?)),
            Value::Number(_) => Ok(TrigScalar::constant(dim, complex_from_json(v)?)),
            Value::Object(o) if o.contains_key("num") => {
                let num = TrigPoly::from_json(&o["num"], dim)?;
                match o.get("den") {
                    None => Ok(TrigScalar::poly(num)),
                    Some(d) => TrigScalar::quotient(num, TrigPoly::from_json(d, dim)?),
                }
            }
            Value::Object(_) => Ok(TrigScalar::constant(dim, complex_from_json(v)?)),
            _ => Err(bad("trig scalar: expected {\"num\",\"den\"}, a term list or a number")),
        }
    }
}

impl MatScalar {
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows())
                .map(|i| Value::Array((0..self.cols()).map(|j| self.get(i, j).to_json()).collect()))
                .collect(),
        )
    }

    /// Accepts a nested list of rows; a single scalar is read as a 1×1 matrix.
    pub fn from_json(v: &Value, dim: usize) -> Result<MatScalar> {
        let rows = match v.as_array() {
            Some(rows) if rows.first().is_some_and(Value::is_array) && rows.iter().all(|r| {
                r.as_array().is_some_and(|c| c.first().is_none_or(|e| !e.is_object() || e.get("k").is_none()))
            }) => rows,
            _ => return Ok(MatScalar::scalar(TrigScalar::from_json(v, dim)?)),
        };
        let ncols = rows[0].as_array().map_or(0, Vec::len);
        let mut entries = Vec::new();
        for r in rows {
            let r = r.as_array().ok_or_else(|| bad("matrix: rows must be lists"))?;
            if r.len() != ncols {
                return Err(Error::DimensionMismatch("matrix rows of unequal length".into()));
            }
            for e in r {
                entries.push(TrigScalar::from_json(e, dim)?);
            }
        }
        Ok(MatScalar::from_entries(dim, rows.len(), ncols, entries))
    }
}
