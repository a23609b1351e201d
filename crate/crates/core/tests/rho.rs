mod common;

use common::scenes::{coordinate_extension, covering_scene, kappa_extension, random_unitary, wavy};
use common::{rng, suites};
use folrho_core::connections::{bott_connection, HermMetric, PartialConnection};
use folrho_core::rho::{bordism_integrand, e_relative, gv_constant, rho_imag, FramingData, GvConstant};
use folrho_core::Tolerances;
use num_complex::Complex64;

#[test]
fn circle_family() {
    for r in suites::CIRCLE_R {
        let (closed, numeric, imag, corr) = suites::circle_rho(r);
        assert!(closed < 1e-9, "r = {r}: closed {closed}");
        assert!(numeric < 1e-6, "r = {r}: numeric {numeric}");
        assert!(imag < 1e-12, "r = {r}: imag {imag}");
        assert!(corr < 1e-12, "r = {r}: corrections {corr}");
    }
}

#[test]
fn framing_difference_on_the_circle() {
    for r in suites::CIRCLE_R {
        let e = suites::framing_difference(r);
        assert!(e < 1e-8, "r = {r}: {e}");
    }
}

#[test]
fn unitary_extensions_vanish() {
    for seed in 0..10 {
        let v = suites::unitary_vanishing(seed);
        assert!(v < 1e-12, "seed {seed}: {v}");
    }
}

#[test]
fn covering_multiplicativity() {
    for seed in 0..4 {
        for k in [2, 3] {
            let (err, size) = suites::covering(seed, k);
            assert!(size > 1e-3, "seed {seed}: ρ too small to be informative ({size})");
            assert!(err < 1e-10, "seed {seed}, k = {k}: {err}");
        }
    }
}

#[test]
fn adjoint_flips_sign() {
    let tol = Tolerances::default();
    for seed in 0..3 {
        let s = covering_scene(&mut rng(seed));
        let v = rho_imag(&s.pc, &s.c, &s.h, &s.cf, &tol).unwrap();
        let pc_star = PartialConnection::new(s.pc.base().adjoint(&s.h).unwrap(), s.pc.foliation().clone(), &tol).unwrap();
        let w = rho_imag(&pc_star, &s.c.adjoint(&s.h).unwrap(), &s.h, &s.cf, &tol).unwrap();
        assert!((v + w).norm() < 1e-10, "seed {seed}: {v} vs {w}");
    }
}

#[test]
fn constant_gauge_invariance() {
    let tol = Tolerances::default();
    for seed in 0..3 {
        let mut r = rng(seed);
        let s = covering_scene(&mut r);
        let v = rho_imag(&s.pc, &s.c, &s.h, &s.cf, &tol).unwrap();
        let g = common::random_constant(&mut r, 2, false) + random_unitary(&mut r, 2).scale(2.0);
        let h = HermMetric::new(g.adjoint() * s.h.matrix() * &g).unwrap();
        let pc = PartialConnection::new(s.pc.base().gauge(&g).unwrap(), s.pc.foliation().clone(), &tol).unwrap();
        let w = rho_imag(&pc, &s.c.gauge(&g).unwrap(), &h, &s.cf, &tol).unwrap();
        assert!((v - w).norm() < 1e-10, "seed {seed}: {v} vs {w}");
    }
}

#[test]
fn rho_imag_is_imaginary_on_codim_one_scenes() {
    let tol = Tolerances::default();
    let cd = wavy(3);
    let cf = bott_connection(&cd, &tol).unwrap();
    for seed in 0..5 {
        let mut r = rng(seed);
        let (pc, c) = kappa_extension(&mut r, &cd, 2, 1, false);
        let h = common::metric(&mut r, 2, false);
        let v = rho_imag(&pc, &c, &h, &cf, &tol).unwrap();
        assert!(v.re.abs() < 1e-12);
    }
}

#[test]
fn gv_identity_with_transgression_constant() {
    for seed in 0..10 {
        let rep = suites::gv_identity(seed);
        assert!(rep.lhs_norm > 1e-6 && rep.gv_norm > 1e-6, "seed {seed}: degenerate instance");
        assert!(rep.residual_transgression < 1e-8, "seed {seed}: {}", rep.residual_transgression);
    }
}

#[test]
fn gv_stated_constant_differs_by_n_plus_one() {
    let ratio = gv_constant(2, GvConstant::Stated) / gv_constant(2, GvConstant::Transgression);
    assert!((ratio - Complex64::new(3.0, 0.0)).norm() < 1e-14);
    let rep = suites::gv_identity(0);
    assert!((rep.residual - 2.0 * rep.lhs_norm).abs() < 1e-8 * rep.lhs_norm);
}

#[test]
fn gv_codim_one_scenes() {
    for cd in suites::gv_scenes() {
        let (stated, transgression) = suites::gv_scene(&cd);
        assert!(stated < 1e-8 && transgression < 1e-8);
    }
}

#[test]
fn relative_e_invariant() {
    let tol = Tolerances::default();
    let s = FramingData::trivial(3, 2);
    let u = folrho_core::charforms::chern_character(&folrho_core::connections::Connection::trivial(3, 1));
    assert_eq!(e_relative(&s, &s, &u, &tol).unwrap(), Complex64::new(0.0, 0.0));
    let json = s.to_json();
    let back = FramingData::from_json(&json, &tol).unwrap();
    assert_eq!(back.rank(), 2);
}

#[test]
fn bordism_integrand_of_codim_two_extensions_is_exact() {
    let tol = Tolerances::default();
    for seed in 0..3 {
        let mut r = rng(seed);
        let (pc, c) = coordinate_extension(&mut r, 4, &[0, 1], 2, 1, false);
        let cf = folrho_core::connections::Connection::trivial(4, 2);
        let v = bordism_integrand(&pc, &c, &cf, &tol).unwrap();
        assert!(v.norm() < 1e-10, "seed {seed}: {v}");
    }
}
