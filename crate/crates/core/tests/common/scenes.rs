//! Fixed geometric scenes: codimension-one data, extensions, covering scenes.

use folrho_core::connections::{CodimOneData, Connection, HermMetric, PartialConnection};
use folrho_core::forms::{Foliation, Form, VectorField};
use folrho_core::trigcalc::{MatScalar, TrigPoly, TrigScalar};
use folrho_core::Tolerances;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{matrix, random_constant};

/// `κ = f dx_last`, `ω = −(∂₁f/f) dx₁`, `N = f⁻¹∂_last` with `f = 2 + sin 2πx₁`.
pub fn wavy(dim: usize) -> CodimOneData {
    let mut k = vec![0; dim];
    k[0] = 1;
    let f = TrigPoly::real(dim, 2.0).add(&TrigPoly::sin(dim, &k));
    let fs = TrigScalar::poly(f.clone());
    let last = dim - 1;
    let kappa = Form::coordinate(dim, &[last]).scale_by(&fs);
    let omega = Form::coordinate(dim, &[0]).scale_by(&TrigScalar::quotient(f.deriv(0).neg(), f).unwrap());
    let normal = VectorField::coordinate(dim, last).scale_by(&fs.recip().unwrap());
    CodimOneData::new(kappa, omega, normal, &Tolerances::default()).unwrap()
}

/// Rank-`rank` extension `d + Σ_{j ∈ transverse} B_j dx_j` of the trivial
/// partial connection along the coordinate foliation spanned by `leaves`.
pub fn coordinate_extension(
    r: &mut ChaCha8Rng,
    dim: usize,
    leaves: &[usize],
    rank: usize,
    bw: i32,
    real: bool,
) -> (PartialConnection, Connection) {
    let tol = Tolerances::default();
    let fol = Foliation::coordinate(dim, leaves);
    let pc = PartialConnection::new(Connection::trivial(dim, rank), fol, &tol).unwrap();
    let comps = (0..dim)
        .map(|j| {
            if leaves.contains(&j) {
                MatScalar::zero(dim, rank, rank)
            } else {
                matrix(r, dim, rank, bw, 1, real)
            }
        })
        .collect();
    let c = Connection::new(Form::one_form(dim, rank, comps), real).unwrap();
    (pc, c)
}

/// Extension `∇^I + κ⊗B(x)` of the trivial rank-`rank` partial connection along `ker κ`.
pub fn kappa_extension(r: &mut ChaCha8Rng, cd: &CodimOneData, rank: usize, bw: i32, real: bool) -> (PartialConnection, Connection) {
    let tol = Tolerances::default();
    let dim = cd.kappa().dim();
    let pc = PartialConnection::new(Connection::trivial(dim, rank), cd.foliation().clone(), &tol).unwrap();
    let b = matrix(r, dim, rank, bw, 1, real);
    let c = Connection::new(cd.kappa().wedge(&Form::function(b)), real).unwrap();
    (pc, c)
}

/// T³ scene with `F = span(∂x, ∂y)`: `A = M(z) dx + N(z) dy + P(x,y,z) dz`,
/// where `M, N` are polynomials in one fixed matrix, so `[M,N] = 0`.
pub struct CoveringScene {
    pub pc: PartialConnection,
    pub c: Connection,
    pub h: HermMetric,
    pub cf: Connection,
}

fn z_poly(r: &mut ChaCha8Rng) -> TrigPoly {
    let mut c = || Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0));
    TrigPoly::constant(3, c())
        .add(&TrigPoly::cos(3, &[0, 0, 1]).scale(c()))
        .add(&TrigPoly::sin(3, &[0, 0, 1]).scale(c()))
}

pub fn covering_scene(r: &mut ChaCha8Rng) -> CoveringScene {
    let tol = Tolerances::default();
    let dim = 3;
    let m0 = random_constant(r, 2, false);
    let id = DMatrix::<Complex64>::identity(2, 2);
    let mut commuting = || {
        let (a, b) = (z_poly(r), z_poly(r));
        MatScalar::poly_times(&a, &id).add(&MatScalar::poly_times(&b, &m0))
    };
    let mx = commuting();
    let nx = commuting();
    let base = Connection::new(Form::one_form(dim, 2, vec![mx.clone(), nx.clone(), MatScalar::zero(dim, 2, 2)]), false).unwrap();
    let pc = PartialConnection::new(base, Foliation::coordinate(dim, &[0, 1]), &tol).unwrap();
    let p = matrix(r, dim, 2, 1, 1, false);
    let c = Connection::new(Form::one_form(dim, 2, vec![mx, nx, p]), false).unwrap();
    CoveringScene {
        pc,
        c,
        h: super::metric(r, 2, false),
        cf: Connection::trivial(dim, 1),
    }
}

/// Unitary `n×n` matrix from the QR factorization of a random complex matrix.
pub fn random_unitary(r: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex64> {
    random_constant(r, n, false).qr().q()
}
