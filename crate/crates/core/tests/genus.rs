mod common;

use common::suites;
use folrho_core::charforms::{ahat_in_ch, rat, Truncation};

#[test]
fn low_degree_ahat_coefficients_are_exact() {
    suites::genus_exact().unwrap();
}

#[test]
fn ahat_in_ch_degree_four() {
    let p = ahat_in_ch(2, Truncation::Inclusive).homogeneous_part(4);
    assert_eq!(p.terms().count(), 1);
    assert_eq!(p.coeff(&[0, 1]), rat(-1, 24));
}

#[test]
fn ahat_in_ch_matches_ahat_form() {
    for seed in 0..10 {
        let r = suites::genus_forms(seed);
        assert!(r < 1e-9, "seed {seed}: residual {r}");
    }
}
