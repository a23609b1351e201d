use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::algebra::{basis, Monomial, WOElement, WoConfig};
use crate::charforms::Truncation;
use crate::error::{Error, Result};

/// Default bound on the number of basis monomials.
pub const DEFAULT_BASIS_CAP: usize = 100_000;

type Matrix = Vec<Vec<BigRational>>;

/// Row-reduces in place; returns the pivot columns.
fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = BigRational::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn rank(mut m: Matrix, ncols: usize) -> usize {
    rref(&mut m, ncols).len()
}

/// Basis of `{x : m x = 0}`.
fn nullspace(mut m: Matrix, ncols: usize) -> Vec<Vec<BigRational>> {
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Matrix of `d: B_k → B_{k+1}`, one row per target monomial.
fn d_matrix(config: WoConfig, src: &[Monomial], dst: &[Monomial]) -> Matrix {
    let index: BTreeMap<&Monomial, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = vec![vec![BigRational::zero(); src.len()]; dst.len()];
    for (j, m) in src.iter().enumerate() {
        let dm = WOElement::monomial(config, m.clone(), BigRational::one()).d();
        for (t, c) in dm.terms() {
            mat[index[t]][j] = c.clone();
        }
    }
    mat
}

#[derive(Clone, Debug, PartialEq)]
pub struct EulerCheck {
    /// `Σ_{k≤max} (−1)^k dim B_k`.
    pub chain: i64,
    /// `Σ_{k≤max} (−1)^k dim H^k + (−1)^max rank(d_max)`.
    pub homology: i64,
}

impl EulerCheck {
    pub fn holds(&self) -> bool {
        self.chain == self.homology
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyReport {
    pub config: WoConfig,
    pub max_degree: u32,
    pub ranks: BTreeMap<u32, usize>,
    pub basis_dims: BTreeMap<u32, usize>,
    /// Cycles whose classes form a basis of `H^k`.
    pub representatives: BTreeMap<u32, Vec<WOElement>>,
    pub euler: EulerCheck,
    /// Degrees where the other truncation mode gives a different rank: `(this, other)`.
    pub truncation_differences: BTreeMap<u32, (usize, usize)>,
}

impl CohomologyReport {
    pub fn rank(&self, k: u32) -> usize {
        self.ranks.get(&k).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let mode = |t: Truncation| match t {
            Truncation::Inclusive => "inclusive",
            Truncation::Strict => "strict",
        };
        json!({
            "q": self.config.q,
            "qprime": self.config.qprime_value(),
            "truncation": mode(self.config.truncation),
            "max_degree": self.max_degree,
            "betti": self.ranks.iter().map(|(k, r)| (k.to_string(), json!(r))).collect::<serde_json::Map<_, _>>(),
            "basis_dims": self.basis_dims.iter().map(|(k, r)| (k.to_string(), json!(r))).collect::<serde_json::Map<_, _>>(),
            "representatives": self.representatives.iter()
                .map(|(k, v)| (k.to_string(), json!(v.iter().map(|e| e.to_string()).collect::<Vec<_>>())))
                .collect::<serde_json::Map<_, _>>(),
            "euler": {"chain": self.euler.chain, "homology": self.euler.homology, "holds": self.euler.holds()},
            "truncation_differences": self.truncation_differences.iter()
                .map(|(k, (a, b))| (k.to_string(), json!({"this": a, "other": b})))
                .collect::<serde_json::Map<_, _>>(),
        })
    }
}

fn graded_basis(config: WoConfig, cap: usize) -> Result<BTreeMap<u32, Vec<Monomial>>> {
    let all = basis(config);
    if all.len() > cap {
        return Err(Error::CapExceeded { size: all.len(), cap });
    }
    let mut by_degree: BTreeMap<u32, Vec<Monomial>> = BTreeMap::new();
    for m in all {
        by_degree.entry(m.degree()).or_default().push(m);
    }
    Ok(by_degree)
}

fn ranks_only(config: WoConfig, max_degree: u32, cap: usize) -> Result<BTreeMap<u32, usize>> {
    let by_degree = graded_basis(config, cap)?;
    let empty = Vec::new();
    let b = |k: u32| by_degree.get(&k).unwrap_or(&empty);
    let drank = |k: u32| rank(d_matrix(config, b(k), b(k + 1)), b(k).len());
    let mut out = BTreeMap::new();
    let mut prev = 0;
    for k in 0..=max_degree {
        let r = drank(k);
        out.insert(k, b(k).len() - r - prev);
        prev = r;
    }
    Ok(out)
}

/// Cohomology of `WO_q` in degrees `0..=max_degree` by exact elimination.
pub fn wo_cohomology_with(config: WoConfig, max_degree: u32, cap: usize) -> Result<CohomologyReport> {
    let by_degree = graded_basis(config, cap)?;
    let empty = Vec::new();
    let b = |k: u32| by_degree.get(&k).unwrap_or(&empty);
    let mut ranks = BTreeMap::new();
    let mut dims = BTreeMap::new();
    let mut reps = BTreeMap::new();
    let mut prev_rank = 0usize;
    // echelon form of the image of d_{k−1}, in the coordinates of B_k
    let mut image: Matrix = Vec::new();
    let mut chain = 0i64;
    let mut homology = 0i64;
    let mut last_rank = 0usize;
    for k in 0..=max_degree {
        let src = b(k);
        let dmat = d_matrix(config, src, b(k + 1));
        let r = rank(dmat.clone(), src.len());
        let h = src.len() - r - prev_rank;
        let mut span = image.clone();
        let mut span_rank = rank(span.clone(), src.len());
        let mut found = Vec::new();
        for v in nullspace(dmat.clone(), src.len()) {
            if found.len() == h {
                break;
            }
            span.push(v.clone());
            let nr = rank(span.clone(), src.len());
            if nr > span_rank {
                span_rank = nr;
                let mut e = WOElement::zero(config);
                for (m, c) in src.iter().zip(&v) {
                    e = e.add(&WOElement::monomial(config, m.clone(), c.clone()));
                }
                found.push(e);
            } else {
                span.pop();
            }
        }
        debug_assert_eq!(found.len(), h);
        ranks.insert(k, h);
        dims.insert(k, src.len());
        reps.insert(k, found);
        let sign = if k % 2 == 0 { 1 } else { -1 };
        chain += sign * src.len() as i64;
        homology += sign * h as i64;
        last_rank = r;
        // columns of dmat are the images of the basis of B_k
        image = (0..src.len()).map(|j| dmat.iter().map(|row| row[j].clone()).collect()).collect();
        prev_rank = r;
    }
    let sign = if max_degree % 2 == 0 { 1 } else { -1 };
    let euler = EulerCheck {
        chain,
        homology: homology + sign * last_rank as i64,
    };
    if !euler.holds() {
        return Err(Error::verification("Euler characteristic of WO_q", (euler.chain - euler.homology).abs() as f64, 0.0));
    }
    let other = config.with_truncation(match config.truncation {
        Truncation::Inclusive => Truncation::Strict,
        Truncation::Strict => Truncation::Inclusive,
    });
    let other_ranks = ranks_only(other, max_degree, cap)?;
    let truncation_differences = ranks
        .iter()
        .filter_map(|(k, &r)| {
            let o = other_ranks.get(k).copied().unwrap_or(0);
            (o != r).then_some((*k, (r, o)))
        })
        .collect();
    Ok(CohomologyReport {
        config,
        max_degree,
        ranks,
        basis_dims: dims,
        representatives: reps,
        euler,
        truncation_differences,
    })
}

/// Cohomology with the default configuration and basis cap.
pub fn wo_cohomology(q: u32, max_degree: u32) -> Result<CohomologyReport> {
    wo_cohomology_with(WoConfig::new(q), max_degree, DEFAULT_BASIS_CAP)
}
