//! Random instances shared by the integration suites.
#![allow(dead_code)]

use folrho_core::connections::{Connection, HermMetric};
use folrho_core::forms::{subsets, Form, IndexSet, VectorField};
use folrho_core::trigcalc::{MatScalar, TrigPoly, TrigScalar};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn freq(r: &mut ChaCha8Rng, dim: usize, bw: i32) -> Vec<i32> {
    (0..dim).map(|_| r.random_range(-bw..=bw)).collect()
}

/// Real trigonometric polynomial with a constant and `modes` random modes.
pub fn real_poly(r: &mut ChaCha8Rng, dim: usize, bw: i32, modes: usize) -> TrigPoly {
    let mut p = TrigPoly::real(dim, r.random_range(-1.0..1.0));
    for _ in 0..modes {
        let k = freq(r, dim, bw);
        let (a, b) = (r.random_range(-1.0..1.0), r.random_range(-1.0..1.0));
        p = p.add(&TrigPoly::cos(dim, &k).scale(Complex64::new(a, 0.0)));
        p = p.add(&TrigPoly::sin(dim, &k).scale(Complex64::new(b, 0.0)));
    }
    p
}

pub fn complex_poly(r: &mut ChaCha8Rng, dim: usize, bw: i32, modes: usize) -> TrigPoly {
    let re = real_poly(r, dim, bw, modes);
    let im = real_poly(r, dim, bw, modes);
    re.add(&im.scale(Complex64::new(0.0, 1.0)))
}

fn poly(r: &mut ChaCha8Rng, dim: usize, bw: i32, modes: usize, real: bool) -> TrigPoly {
    if real {
        real_poly(r, dim, bw, modes)
    } else {
        complex_poly(r, dim, bw, modes)
    }
}

pub fn matrix(r: &mut ChaCha8Rng, dim: usize, rank: usize, bw: i32, modes: usize, real: bool) -> MatScalar {
    let entries = (0..rank * rank)
        .map(|_| TrigScalar::poly(poly(r, dim, bw, modes, real)))
        .collect();
    MatScalar::from_entries(dim, rank, rank, entries)
}

/// Antisymmetric real matrix of trigonometric polynomials.
pub fn so_matrix(r: &mut ChaCha8Rng, dim: usize, rank: usize, bw: i32, modes: usize) -> MatScalar {
    let mut m = MatScalar::zero(dim, rank, rank);
    for i in 0..rank {
        for j in i + 1..rank {
            let p = TrigScalar::poly(real_poly(r, dim, bw, modes));
            m.set(i, j, p.clone());
            m.set(j, i, p.neg());
        }
    }
    m
}

/// Random form supported on the given index sets.
pub fn form_on(r: &mut ChaCha8Rng, dim: usize, degree: usize, rank: usize, masks: &[IndexSet], bw: i32, real: bool) -> Form {
    let mut f = Form::zero(dim, degree, rank);
    for &m in masks {
        f = f.with_term(m, matrix(r, dim, rank, bw, 1, real));
    }
    f
}

/// Random form with `terms` randomly chosen index sets (all of them if fewer).
pub fn form(r: &mut ChaCha8Rng, dim: usize, degree: usize, rank: usize, terms: usize, bw: i32, real: bool) -> Form {
    let mut all = subsets(dim, degree);
    while all.len() > terms {
        let i = r.random_range(0..all.len());
        all.remove(i);
    }
    form_on(r, dim, degree, rank, &all, bw, real)
}

pub fn connection(r: &mut ChaCha8Rng, dim: usize, rank: usize, bw: i32, real: bool) -> Connection {
    let comps = (0..dim).map(|_| matrix(r, dim, rank, bw, 1, real)).collect();
    Connection::new(Form::one_form(dim, rank, comps), real).unwrap()
}

/// Real connection with values in `so(rank)`.
pub fn so_connection(r: &mut ChaCha8Rng, dim: usize, rank: usize, bw: i32) -> Connection {
    let comps = (0..dim).map(|_| so_matrix(r, dim, rank, bw, 1)).collect();
    Connection::new(Form::one_form(dim, rank, comps), true).unwrap()
}

/// Constant connection `Σ M_j dx_j`.
pub fn constant_connection(dim: usize, mats: &[DMatrix<Complex64>], real: bool) -> Connection {
    let comps = mats.iter().map(|m| MatScalar::from_constant(dim, m)).collect();
    Connection::new(Form::one_form(dim, mats[0].nrows(), comps), real).unwrap()
}

pub fn real_mat(n: usize, vals: &[f64]) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(n, n, vals).map(|x| Complex64::new(x, 0.0))
}

pub fn random_constant(r: &mut ChaCha8Rng, n: usize, real: bool) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |_, _| {
        let re = r.random_range(-1.0..1.0);
        let im = if real { 0.0 } else { r.random_range(-1.0..1.0) };
        Complex64::new(re, im)
    })
}

/// Random positive-definite Hermitian (real symmetric if `real`) metric.
pub fn metric(r: &mut ChaCha8Rng, n: usize, real: bool) -> HermMetric {
    let g = random_constant(r, n, real);
    let h = &g * g.adjoint() + DMatrix::identity(n, n).map(|x: f64| Complex64::new(x, 0.0));
    HermMetric::new(h).unwrap()
}

pub fn vector_field(r: &mut ChaCha8Rng, dim: usize, bw: i32) -> VectorField {
    VectorField::new((0..dim).map(|_| TrigScalar::poly(complex_poly(r, dim, bw, 1))).collect())
}

/// Real scalar 1-form of bandwidth `bw`.
pub fn real_one_form(r: &mut ChaCha8Rng, dim: usize, bw: i32, modes: usize) -> Form {
    folrho_core::forms::poly_one_form((0..dim).map(|_| real_poly(r, dim, bw, modes)).collect())
}
pub mod scenes;
pub mod suites;
