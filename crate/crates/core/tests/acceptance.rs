//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.
//!
//! `cargo test -p folrho-core --test acceptance`

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::suites;
use folrho_core::wo::{basis, universal_class, wo_cohomology, Monomial, WOElement, WoConfig};
use folrho_core::charforms::{rat, Truncation};
use num_bigint::BigInt;
use num_rational::BigRational;

struct Check {
    ok: bool,
    detail: String,
}

impl Check {
    fn new() -> Check {
        Check { ok: true, detail: String::new() }
    }

    /// Records `value < tol`; the worst value per label is reported.
    fn below(&mut self, label: &str, value: f64, tol: f64) {
        let pass = value < tol;
        self.ok &= pass;
        if !pass {
            self.note(format!("{label} = {value:.3e} (tol {tol:.0e})"));
        }
    }

    fn require(&mut self, label: &str, cond: bool) {
        self.ok &= cond;
        if !cond {
            self.note(format!("{label} failed"));
        }
    }

    fn note(&mut self, s: String) {
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(&s);
    }
}

fn worst(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn criterion(n: u32, name: &str, budget: Option<Duration>, body: impl FnOnce(&mut Check)) -> bool {
    let start = Instant::now();
    let mut c = Check::new();
    body(&mut c);
    let elapsed = start.elapsed();
    if let Some(b) = budget {
        if elapsed > b {
            c.ok = false;
            c.note(format!("runtime {:.2}s over {:.0}s budget", elapsed.as_secs_f64(), b.as_secs_f64()));
        }
    }
    let status = if c.ok { "PASS" } else { "FAIL" };
    let detail = if c.detail.is_empty() { String::new() } else { format!(" :: {}", c.detail) };
    println!("{status} [{n}] {name} ({:.2}s){detail}", elapsed.as_secs_f64());
    c.ok
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn main() -> ExitCode {
    let mut all = true;

    all &= criterion(1, "circle family rho(S1, r) = [-r]", secs(1), |c| {
        for r in suites::CIRCLE_R {
            let (closed, numeric, imag, corr) = suites::circle_rho(r);
            c.below(&format!("r={r} closed-form error"), closed, 1e-9);
            c.below(&format!("r={r} numeric error"), numeric, 1e-6);
            c.below(&format!("r={r} |imag|"), imag, 1e-12);
            c.below(&format!("r={r} corrections"), corr, 1e-12);
        }
    });

    all &= criterion(2, "closed-form and continued eta agree", secs(5), |c| {
        let offsets = suites::spectral_offsets();
        c.require("20 offsets", offsets.len() == 20);
        let pairs: Vec<_> = offsets.iter().map(|&a| suites::spectral_pair(a, 1.0)).collect();
        c.below("eta(0) difference", worst(pairs.iter().map(|p| p.0)), 1e-8);
        c.below("direct sum at s=3", worst(pairs.iter().map(|p| p.1)), 1e-6);
    });

    all &= criterion(3, "exterior calculus properties", secs(30), |c| {
        c.below("d^2", worst((0..50).map(suites::d_squared)), 1e-10);
        c.below("Leibniz", worst((0..50).map(suites::leibniz)), 1e-10);
        c.below("Stokes", worst((0..50).map(suites::stokes)), 1e-10);
        for seed in 0..50 {
            if let Err(e) = suites::filtration(seed) {
                c.require(&format!("filtration seed {seed}: {e}"), false);
            }
        }
    });

    all &= criterion(4, "Chern-Weil identities", secs(60), |c| {
        c.below("closedness", worst((0..20).map(suites::cw_closed)), 1e-8);
        c.below("conjugation/reality", worst((0..20).map(suites::cw_conjugation)), 1e-8);
        c.below("direct sums", worst((0..20).map(suites::cw_direct_sum)), 1e-8);
        c.below("d of transgression", worst((0..20).map(suites::cw_transgression)), 1e-8);
        c.below("cocycle/antisymmetry periods", worst((0..20).map(suites::cw_cocycle)), 1e-8);
        for seed in 0..20 {
            if let Err(e) = suites::cw_filtration(seed) {
                c.require(&format!("filtration seed {seed}: {e}"), false);
            }
        }
    });

    all &= criterion(5, "A-hat genus", None, |c| {
        if let Err(e) = suites::genus_exact() {
            c.require(&format!("exact coefficients: {e}"), false);
        }
        c.below("ahat_in_ch vs ahat_form", worst((0..10).map(suites::genus_forms)), 1e-9);
    });

    all &= criterion(6, "Godbillon-Vey identity with the stated constant", None, |c| {
        let reps: Vec<_> = (0..10).map(suites::gv_identity).collect();
        c.require("both sides nonzero", reps.iter().all(|r| r.lhs_norm > 1e-6 && r.gv_norm > 1e-6));
        c.below("chern-weil residual (stated constant)", worst(reps.iter().map(|r| r.residual)), 1e-8);
        let tr = worst(reps.iter().map(|r| r.residual_transgression));
        c.note(format!("residual with 1/(n+1)! in place of 1/n! = {tr:.1e}"));
        let scenes: Vec<_> = suites::gv_scenes().iter().map(suites::gv_scene).collect();
        c.below("rho_imag_gv vs stated constant", worst(scenes.iter().map(|s| s.0)), 1e-8);
    });

    all &= criterion(7, "structural properties of rho^iR", None, |c| {
        c.below("unitary vanishing", worst((0..10).map(suites::unitary_vanishing)), 1e-12);
        for k in [2, 3] {
            let runs: Vec<_> = (0..4).map(|s| suites::covering(s, k)).collect();
            c.below(&format!("covering k={k}"), worst(runs.iter().map(|r| r.0)), 1e-10);
            c.require("covering scenes nonzero", runs.iter().all(|r| r.1 > 1e-3));
        }
        c.below("framing difference", worst(suites::CIRCLE_R.iter().map(|&r| suites::framing_difference(r))), 1e-8);
    });

    all &= criterion(8, "WO_q algebra and Delta", secs(30), |c| {
        let one = BigRational::from_integer(BigInt::from(1));
        for q in 1..=4 {
            let cfg = WoConfig::new(q);
            let bad = basis(cfg).into_iter().filter(|m| !WOElement::monomial(cfg, m.clone(), one.clone()).d().d().is_zero()).count();
            c.require(&format!("d^2 = 0 on WO_{q}"), bad == 0);
        }
        match wo_cohomology(1, 3) {
            Ok(rep) => {
                c.require("rank H^3(WO_1) = 1", rep.rank(3) == 1);
                c.require(
                    "representative ct1*c1",
                    rep.representatives.get(&3).and_then(|v| v.first()).map(|e| e.to_string()).as_deref() == Some("ct1*c1"),
                );
            }
            Err(e) => c.require(&format!("H^3(WO_1): {e}"), false),
        }
        match universal_class(WoConfig::new(2), 5) {
            Ok(u) => {
                let m = Monomial::new(vec![1], vec![0, 1]);
                let want = WOElement::monomial(WoConfig::new(2), m, rat(-1, 12));
                c.require("U is a cycle", u.d().is_zero());
                if u != want {
                    c.require(&format!("U(2,5) = -1/12*ct1*c2 (computed {u})"), false);
                }
            }
            Err(e) => c.require(&format!("U(2,5): {e}"), false),
        }
        c.require(
            "strict truncation kills U(2,5)",
            universal_class(WoConfig::new(2).with_truncation(Truncation::Strict), 5).map(|u| u.is_zero()).unwrap_or(false),
        );
        c.below("kt relation, rank one", worst((0..10).map(suites::kt_rank_one)), 1e-8);
        c.below("i<Delta(U),[M]> vs rho^iR", worst((0..3).map(|s| suites::delta_u_pairing(s).0)), 1e-8);
    });

    println!(
        "SKIP [9] declared not reproducible: regulator equality, general-manifold eta invariants, \
         bordism invariance as a theorem, non-flat metrics and non-torus topology"
    );

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
