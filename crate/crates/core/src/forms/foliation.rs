use num_complex::Complex64;

use super::vector::VectorField;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;
use crate::trigcalc::{Grid, TrigScalar};

/// Orthonormal basis (modified Gram–Schmidt) of the span of `vs`, dropping
/// vectors whose residual norm is below `tol`.
pub fn orthonormal_span(vs: &[Vec<Complex64>], tol: f64) -> Vec<Vec<Complex64>> {
    gram_schmidt(vs, tol).0
}

/// Basis together with the smallest residual norm that was accepted.
fn gram_schmidt(vs: &[Vec<Complex64>], tol: f64) -> (Vec<Vec<Complex64>>, f64) {
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    let mut min_accepted = f64::INFINITY;
    for v in vs {
        let r = project_out(v, &basis);
        let n = norm(&r);
        if n > tol {
            min_accepted = min_accepted.min(n);
            basis.push(r.iter().map(|c| c / n).collect());
        }
    }
    (basis, min_accepted)
}

fn project_out(v: &[Complex64], basis: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut r = v.to_vec();
    for e in basis {
        let c: Complex64 = e.iter().zip(&r).map(|(a, b)| a.conj() * b).sum();
        for (ri, ei) in r.iter_mut().zip(e) {
            *ri -= c * ei;
        }
    }
    r
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Distance of `v` from the span of the orthonormal `basis`.
pub fn span_residual(v: &[Complex64], basis: &[Vec<Complex64>]) -> f64 {
    norm(&project_out(v, basis))
}

/// Verification data recorded when a foliation is built.
#[derive(Clone, Debug, PartialEq)]
pub struct FoliationReport {
    pub grid_points: usize,
    pub min_independent_norm: f64,
    pub integrability_residual: f64,
    pub reality_residual: f64,
}

/// Integrable subbundle of the complexified tangent bundle, given by a frame.
///
/// Frames may be redundant; the rank is the pointwise rank of the span and
/// must be constant on the verification grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Foliation {
    dim: usize,
    frame: Vec<VectorField>,
    rank: usize,
    is_real: bool,
    report: FoliationReport,
}

impl Foliation {
    /// Verifies constant rank and integrability of the frame.
    pub fn new(dim: usize, frame: Vec<VectorField>, tol: &Tolerances) -> Result<Foliation> {
        if let Some(x) = frame.iter().find(|x| x.dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "frame field on T^{} for a foliation of T^{dim}",
                x.dim()
            )));
        }
        let brackets: Vec<VectorField> = (0..frame.len())
            .flat_map(|a| (a + 1..frame.len()).map(move |b| (a, b)))
            .map(|(a, b)| frame[a].bracket(&frame[b]))
            .collect();
        let mut bw = vec![0u32; dim];
        for x in frame.iter().chain(&brackets) {
            for (b, v) in bw.iter_mut().zip(x.bandwidth()) {
                *b = (*b).max(v);
            }
        }
        let grid = Grid::certification_capped(&bw);
        let mut rank: Option<usize> = None;
        let mut min_indep = f64::INFINITY;
        let mut integ: f64 = 0.0;
        let mut real_res: f64 = 0.0;
        let mut failure: Option<Error> = None;
        grid.for_each_point(|x| {
            if failure.is_some() {
                return;
            }
            let vs: Vec<Vec<Complex64>> = frame.iter().map(|f| f.eval(x)).collect();
            let (basis, accepted) = gram_schmidt(&vs, tol.den_margin);
            min_indep = min_indep.min(accepted);
            match rank {
                None => rank = Some(basis.len()),
                Some(r) if r != basis.len() => {
                    failure = Some(Error::Domain(format!(
                        "frame rank changes from {r} to {} at {x:?}",
                        basis.len()
                    )));
                    return;
                }
                _ => {}
            }
            for br in &brackets {
                integ = integ.max(span_residual(&br.eval(x), &basis));
            }
            for v in &vs {
                let c: Vec<Complex64> = v.iter().map(|z| z.conj()).collect();
                real_res = real_res.max(span_residual(&c, &basis));
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        if integ >= tol.integrability {
            return Err(Error::verification("integrability of the frame", integ, tol.integrability));
        }
        Ok(Foliation {
            dim,
            rank: rank.unwrap_or(0),
            is_real: real_res < tol.integrability,
            report: FoliationReport {
                grid_points: grid.len(),
                min_independent_norm: min_indep,
                integrability_residual: integ,
                reality_residual: real_res,
            },
            frame,
        })
    }

    /// `F = T_ℂ T^n`.
    pub fn maximal(dim: usize) -> Foliation {
        Foliation::coordinate(dim, &(0..dim).collect::<Vec<_>>())
    }

    /// `F = 0`.
    pub fn minimal(dim: usize) -> Foliation {
        Foliation::coordinate(dim, &[])
    }

    /// Span of the coordinate fields `∂_j`, `j ∈ axes`.
    pub fn coordinate(dim: usize, axes: &[usize]) -> Foliation {
        Foliation {
            dim,
            frame: axes.iter().map(|&j| VectorField::coordinate(dim, j)).collect(),
            rank: axes.len(),
            is_real: true,
            report: FoliationReport {
                grid_points: 0,
                min_independent_norm: 1.0,
                integrability_residual: 0.0,
                reality_residual: 0.0,
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn frame(&self) -> &[VectorField] {
        &self.frame
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn codim(&self) -> usize {
        self.dim - self.rank
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    pub fn report(&self) -> &FoliationReport {
        &self.report
    }

    /// Pulls the frame back along `x ↦ M x` for a diagonal integer matrix.
    ///
    /// For `M = diag(m_j)`, the pushforward of `∂_j` is `m_j ∂_j`, so the
    /// pulled-back frame field has components `v_j(Mx) / m_j`.
    pub fn pullback_diagonal(&self, m: &[Vec<i32>], tol: &Tolerances) -> Result<Foliation> {
        for (i, row) in m.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if i != j && v != 0 {
                    return Err(Error::Domain("foliation pullback needs a diagonal matrix".into()));
                }
            }
        }
        let frame = self
            .frame
            .iter()
            .map(|x| {
                VectorField::new(
                    x.components()
                        .iter()
                        .enumerate()
                        .map(|(j, c)| c.pullback(m).scale(Complex64::new(1.0 / m[j][j] as f64, 0.0)))
                        .collect::<Vec<TrigScalar>>(),
                )
            })
            .collect();
        Foliation::new(self.dim, frame, tol)
    }
}
