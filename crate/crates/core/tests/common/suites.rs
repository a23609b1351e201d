//! Per-instance checks shared by the integration tests and the acceptance
//! target. Each returns the worst residual, or a description of a structural
//! failure.

use folrho_core::charforms::{
    ahat_form, ahat_in_ch, chern_character, chern_forms, transgress_ch, GenusTable, Truncation,
};
use folrho_core::connections::Connection;
use folrho_core::forms::{filtration_degree, mask_of, subsets, Foliation, Form, IndexSet, TForm};
use folrho_core::trigcalc::{MatScalar, TPoly, TrigPoly, TrigScalar};
use nalgebra::DMatrix;
use rand_chacha::ChaCha8Rng;
use folrho_core::Tolerances;
use num_complex::Complex64;
use rand::Rng;

use super::scenes::wavy;
use super::{connection, constant_connection, form, form_on, metric, random_constant, rng, so_connection};

pub type Outcome = Result<f64, String>;

fn calc_dim(seed: u64) -> usize {
    if seed % 2 == 0 {
        3
    } else {
        5
    }
}

// ---------- exterior calculus ----------

pub fn d_squared(seed: u64) -> f64 {
    let mut r = rng(seed);
    let dim = calc_dim(seed);
    let deg = r.random_range(0..dim - 1);
    let rank = r.random_range(1..=2);
    let f = form(&mut r, dim, deg, rank, 4, 2, false);
    f.d().d().sup_norm()
}

pub fn leibniz(seed: u64) -> f64 {
    let mut r = rng(seed);
    let dim = calc_dim(seed);
    let p = r.random_range(0..dim);
    let q = r.random_range(0..dim - p);
    let rank = r.random_range(1..=2);
    let a = form(&mut r, dim, p, rank, 3, 2, false);
    let b = form(&mut r, dim, q, rank, 3, 2, false);
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    let rhs = a.d().wedge(&b).add(&a.wedge(&b.d()).scale(Complex64::new(sign, 0.0)));
    a.wedge(&b).d().residual(&rhs)
}

/// `∫_I dω̃ + d∫_I ω̃ = ω̃|₁ − ω̃|₀`.
pub fn stokes(seed: u64) -> f64 {
    let mut r = rng(seed);
    let dim = calc_dim(seed);
    let k = r.random_range(1..dim);
    let alpha = TPoly::new((0..3).map(|_| form(&mut r, dim, k, 1, 3, 2, false)).collect());
    let beta = TPoly::new((0..3).map(|_| form(&mut r, dim, k - 1, 1, 3, 2, false)).collect());
    let w = TForm::new(dim, k, 1, alpha, beta);
    let lhs = w.d().fiber_integrate().add(&w.fiber_integrate().d());
    lhs.residual(&w.restrict(1.0).sub(&w.restrict(0.0)))
}

/// Index sets of size `deg` with at least `p` transverse indices.
fn filtered_masks(dim: usize, leaves: usize, deg: usize, p: usize) -> Vec<IndexSet> {
    let transverse = mask_of(&(leaves..dim).collect::<Vec<_>>());
    subsets(dim, deg).into_iter().filter(|m| (m & transverse).count_ones() as usize >= p).collect()
}

fn check_filtration(what: &str, f: &Form, fol: &Foliation, want: i32) -> Outcome {
    let found = filtration_degree(f, fol, 1e-10);
    let want = want.min(fol.codim() as i32 + 1);
    if found >= want {
        Ok(0.0)
    } else {
        Err(format!("{what}: filtration {found} < {want}"))
    }
}

/// `F^p ∧ F^q ⊂ F^{p+q}` and `d F^p ⊂ F^p` on coordinate foliations of T³/T⁵
/// and on a non-coordinate codimension-one foliation of T³.
pub fn filtration(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let dim = calc_dim(seed);
    if seed % 3 == 2 {
        let cd = wavy(3);
        let fol = cd.foliation();
        let a = cd.kappa().wedge(&form(&mut r, 3, 1, 1, 2, 2, true));
        let b = form(&mut r, 3, 1, 1, 3, 2, true);
        check_filtration("κ∧β", &a, fol, 1)?;
        check_filtration("product", &a.wedge(&b), fol, 1)?;
        check_filtration("κ∧β∧κ∧γ", &a.wedge(&cd.kappa()), fol, 2)?;
        return check_filtration("d", &a.d(), fol, 1);
    }
    let codim = r.random_range(1..=2);
    let leaves = dim - codim;
    let fol = Foliation::coordinate(dim, &(0..leaves).collect::<Vec<_>>());
    let da = r.random_range(0..dim);
    let db = r.random_range(0..=dim - da);
    let p = r.random_range(0..=da.min(codim));
    let q = r.random_range(0..=db.min(codim));
    let a = form_on(&mut r, dim, da, 1, &filtered_masks(dim, leaves, da, p), 2, false);
    let b = form_on(&mut r, dim, db, 1, &filtered_masks(dim, leaves, db, q), 2, false);
    check_filtration("a", &a, &fol, p as i32)?;
    check_filtration("a∧b", &a.wedge(&b), &fol, (p + q) as i32)?;
    if da < dim {
        check_filtration("da", &a.d(), &fol, p as i32)?;
    }
    Ok(0.0)
}

// ---------- Chern–Weil ----------

const CW_DIM: usize = 4;

fn components_residual(a: &[Form], b: &[Form]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.residual(y)).fold(0.0, f64::max)
}

pub fn cw_closed(seed: u64) -> f64 {
    let mut r = rng(seed);
    let c = connection(&mut r, CW_DIM, 2, 1, false);
    let real = connection(&mut r, CW_DIM, 2, 1, true);
    chern_character(&c).closedness_residual().max(ahat_form(&real).unwrap().closedness_residual())
}

/// `ch(∇*) = conj ch(∇)` and `ch` real for `h`-unitary connections.
pub fn cw_conjugation(seed: u64) -> f64 {
    let mut r = rng(seed);
    let c = connection(&mut r, CW_DIM, 2, 1, false);
    let h = metric(&mut r, 2, false);
    let ch = chern_character(&c).components();
    let star = chern_character(&c.adjoint(&h).unwrap()).components();
    let conj: Vec<Form> = ch.iter().map(Form::conj).collect();
    let u = chern_character(&c.unitarize(&h).unwrap()).components();
    let u_conj: Vec<Form> = u.iter().map(Form::conj).collect();
    components_residual(&star, &conj).max(components_residual(&u, &u_conj))
}

/// `ch(∇₁⊕∇₂) = ch(∇₁) + ch(∇₂)` and `c(∇₁⊕∇₂) = c(∇₁)∧c(∇₂)`.
pub fn cw_direct_sum(seed: u64) -> f64 {
    let mut r = rng(seed);
    let c1 = connection(&mut r, CW_DIM, 1, 1, false);
    let c2 = connection(&mut r, CW_DIM, 2, 1, false);
    let s = c1.direct_sum(&c2);
    let ch_sum: Vec<Form> = chern_character(&c1)
        .components()
        .iter()
        .zip(chern_character(&c2).components())
        .map(|(a, b)| a.add(&b))
        .collect();
    let mut worst = components_residual(&chern_character(&s).components(), &ch_sum);
    let (a, b, cs) = (chern_forms(&c1), chern_forms(&c2), chern_forms(&s));
    for k in 0..=CW_DIM / 2 {
        let mut prod = Form::zero(CW_DIM, 2 * k, 1);
        for i in 0..=k {
            prod = prod.add(&a.entry(i as i32).wedge(&b.entry((k - i) as i32)));
        }
        worst = worst.max(cs.entry(k as i32).residual(&prod));
    }
    worst
}

/// `d ch̃(∇₁,∇₀) = ch(∇₁) − ch(∇₀)`.
pub fn cw_transgression(seed: u64) -> f64 {
    let mut r = rng(seed);
    let c0 = connection(&mut r, CW_DIM, 2, 1, false);
    let c1 = connection(&mut r, CW_DIM, 2, 1, false);
    let t = transgress_ch(&c1, &c0);
    let (ch1, ch0) = (chern_character(&c1), chern_character(&c0));
    (1..=(CW_DIM / 2) as i32)
        .map(|p| t.entry(p).d().residual(&ch1.entry(p).sub(&ch0.entry(p))))
        .fold(0.0, f64::max)
}

fn max_period(f: &Form) -> f64 {
    f.periods(&Tolerances::default())
        .unwrap()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Cocycle and antisymmetry of `ch̃` modulo exact forms, via periods.
pub fn cw_cocycle(seed: u64) -> f64 {
    let mut r = rng(seed);
    let cs: Vec<Connection> = (0..3).map(|_| connection(&mut r, 3, 2, 1, false)).collect();
    let t = |a: usize, b: usize| transgress_ch(&cs[a], &cs[b]);
    let mut worst: f64 = 0.0;
    for p in 1..=2 {
        let cyc = t(2, 1).entry(p).add(&t(1, 0).entry(p)).add(&t(0, 2).entry(p));
        let anti = t(1, 0).entry(p).add(&t(0, 1).entry(p));
        worst = worst.max(max_period(&cyc)).max(max_period(&anti));
    }
    worst
}

/// `ch_{2p}(∇) ∈ F^p` for extensions of flat partial connections.
pub fn cw_filtration(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let (pc, c) = if seed % 2 == 0 {
        super::scenes::coordinate_extension(&mut r, 5, &[0, 1, 2], 2, 1, false)
    } else {
        super::scenes::kappa_extension(&mut r, &wavy(3), 2, 1, false)
    };
    let fol = pc.foliation();
    let ch = chern_character(&c);
    for p in 1..=(c.dim() / 2) as i32 {
        let f = ch.entry(p);
        let found = filtration_degree(&f, fol, 1e-8);
        if found < p.min(fol.codim() as i32 + 1) {
            return Err(format!("ch_{} has filtration {found} < {p}", 2 * p));
        }
    }
    Ok(0.0)
}

// ---------- genus ----------

/// `Â_4 = −p₁/24` and `Â_8 = (7p₁² − 4p₂)/5760` exactly.
pub fn genus_exact() -> Result<(), String> {
    use folrho_core::charforms::rat;
    let t = GenusTable::standard();
    let a4 = t.ahat_coefficients(1);
    let a8 = t.ahat_coefficients(2);
    let n = t.num_vars();
    let e = |v: &[u32]| {
        let mut x = v.to_vec();
        x.resize(n, 0);
        x
    };
    let ok4 = a4.coeff(&e(&[1])) == rat(-1, 24) && a4.terms().count() == 1;
    let ok8 = a8.coeff(&e(&[2])) == rat(7, 5760) && a8.coeff(&e(&[0, 1])) == rat(-4, 5760) && a8.terms().count() == 2;
    if ok4 && ok8 {
        Ok(())
    } else {
        Err(format!("Â4 = {a4}, Â8 = {a8}"))
    }
}

/// Real `so(4)` connection on `T⁸`: a `so(2)⊕so(2)` block part whose blocks live on
/// complementary `T⁴` factors, plus a constant coupling. Both `p₁²` and `p₂` survive.
pub fn split_so4(r: &mut ChaCha8Rng) -> Connection {
    let j = |k: usize| {
        let mut m = DMatrix::<Complex64>::zeros(4, 4);
        m[(k, k + 1)] = Complex64::new(1.0, 0.0);
        m[(k + 1, k)] = Complex64::new(-1.0, 0.0);
        m
    };
    let (j0, j1) = (j(0), j(2));
    let comps = (0..8)
        .map(|axis| {
            let lo = if axis < 4 { 0 } else { 4 };
            let mut k = vec![0i32; 8];
            for f in &mut k[lo..lo + 4] {
                *f = r.random_range(-1..=1);
            }
            k[axis] = 0;
            k[lo + (axis + 1) % 4] = 1;
            let (a, b) = (r.random_range(0.5..1.0), r.random_range(0.5..1.0));
            let f = TrigPoly::cos(8, &k)
                .scale(Complex64::new(a, 0.0))
                .add(&TrigPoly::sin(8, &k).scale(Complex64::new(b, 0.0)));
            let block = if axis < 4 { &j0 } else { &j1 };
            let g = random_constant(r, 4, true);
            let coupling = (&g - g.transpose()).scale(0.3);
            let mut m = MatScalar::from_constant(8, &coupling);
            for (row, col) in [(0usize, 1usize), (1, 0), (2, 3), (3, 2)] {
                let s = block[(row, col)];
                if s.re != 0.0 {
                    let e = m.get(row, col).add(&TrigScalar::poly(f.scale(s)));
                    m.set(row, col, e);
                }
            }
            m
        })
        .collect();
    Connection::new(Form::one_form(8, 4, comps), true).unwrap()
}

/// `A(ch₂,…,ch_{2q})` against `Â(∇)` through degree `2q` for an `so(r)` connection.
/// Even seeds: random `so(3)` on T⁴ (`q = 2`); odd seeds: [`split_so4`] on T⁸ (`q = 4`).
pub fn genus_forms(seed: u64) -> f64 {
    let mut r = rng(seed);
    let (c, q) = if seed % 2 == 0 {
        (so_connection(&mut r, 4, 3, 1), 2u32)
    } else {
        (split_so4(&mut r), 4u32)
    };
    let dim = c.dim();
    let ch = chern_character(&c);
    let vals: Vec<Form> = (1..=q as i32).map(|k| ch.entry(k)).collect();
    let ahat = ahat_form(&c).unwrap();
    let poly = ahat_in_ch(q, Truncation::Inclusive);
    let unit = Form::one(dim);
    let mut worst: f64 = 0.0;
    for deg in (2..=2 * q).step_by(2) {
        let got = poly.homogeneous_part(deg).eval_forms(&vals, &unit, &Form::zero(dim, deg as usize, 1));
        worst = worst.max(got.residual(&ahat.degree(deg as usize)));
    }
    worst
}

// ---------- spectral and ρ on the circle ----------

pub const CIRCLE_R: [f64; 6] = [0.0, 0.1, 0.25, 0.3, 0.5, 0.9];

/// `(closed-form error, numeric error, |imag|, largest correction)` of `ρ(S¹,∇(r))` against `[−r]`.
pub fn circle_rho(r: f64) -> (f64, f64, f64, f64) {
    use folrho_core::rho::{rho_s1, FramingData};
    use folrho_core::spectral::{mod_one_distance, EtaMethod};
    let tol = Tolerances::default();
    let s = FramingData::trivial(1, 2);
    let closed = rho_s1(r, &s, EtaMethod::ClosedForm, &tol).unwrap();
    let numeric = rho_s1(r, &s, EtaMethod::ZetaNumeric, &tol).unwrap();
    let want = -r;
    let corr = [closed.provenance, numeric.provenance]
        .iter()
        .map(|p| p.correction_framing.norm().max(p.correction_unitarization.norm()))
        .fold(0.0, f64::max);
    (
        mod_one_distance(closed.real_part, want),
        mod_one_distance(numeric.real_part, want),
        closed.imag_part.abs().max(numeric.imag_part.abs()),
        corr,
    )
}

/// Offsets for the spectral comparison: 19 pseudo-random points of `(0,1)` and `a = 1`.
pub fn spectral_offsets() -> Vec<f64> {
    let mut r = rng(2024);
    let mut v: Vec<f64> = (0..19).map(|_| r.random_range(0.01..0.99)).collect();
    v.push(1.0);
    v
}

/// `(|η_closed − η_numeric|, |η(3)_numeric − truncated sum|)` for offset `a` and scale `σ`.
pub fn spectral_pair(a: f64, scale: f64) -> (f64, f64) {
    use folrho_core::spectral::{eta_arith, eta_direct_sum, eta_numeric, ArithmeticProgression, SpectrumSpec};
    let ap = ArithmeticProgression::new(a, scale).unwrap();
    let closed = eta_arith(a).unwrap();
    let numeric = eta_numeric(&SpectrumSpec::ArithmeticProgression(ap)).unwrap();
    let anchor = numeric.anchors.iter().find(|x| x.s == 3.0).unwrap();
    let direct = eta_direct_sum(&ap, 3.0, 4000.0 * scale);
    ((closed.eta0 - numeric.eta0).abs(), (anchor.eta - direct).abs())
}

// ---------- Godbillon–Vey ----------

/// Real 1-form on T⁵ of bandwidth ≤ 2.
pub fn gv_omega(seed: u64) -> Form {
    let mut r = rng(seed);
    super::real_one_form(&mut r, 5, 2, 1)
}

pub fn gv_identity(seed: u64) -> folrho_core::rho::GvIdentityReport {
    folrho_core::rho::gv_chernweil_identity(&gv_omega(seed), 2).unwrap()
}

/// `(|ρ − stated·∫GV|, |ρ − transgression·∫GV|)` for codimension-one data on T⁵.
pub fn gv_scene(cd: &folrho_core::connections::CodimOneData) -> (f64, f64) {
    let g = folrho_core::rho::rho_imag_gv(cd, 2, &Tolerances::default()).unwrap();
    ((g.value - g.predicted_stated).norm(), (g.value - g.predicted_transgression).norm())
}

pub fn gv_scenes() -> Vec<folrho_core::connections::CodimOneData> {
    use folrho_core::connections::CodimOneData;
    vec![wavy(5), CodimOneData::coordinate(5, 4), CodimOneData::coordinate(5, 0)]
}

// ---------- ρ^{iℝ} ----------

pub fn unitary_vanishing(seed: u64) -> f64 {
    use folrho_core::rho::rho_imag;
    let mut r = rng(seed);
    let tol = Tolerances::default();
    let cd = wavy(3);
    let (pc, c) = super::scenes::kappa_extension(&mut r, &cd, 2, 1, false);
    let h = metric(&mut r, 2, false);
    let u = c.unitarize(&h).unwrap();
    let cf = folrho_core::connections::bott_connection(&cd, &tol).unwrap();
    rho_imag(&pc, &u, &h, &cf, &tol).unwrap().norm()
}

/// `(|ρ(k-cover) − kρ|, |ρ|)` for the covering scene with seed.
pub fn covering(seed: u64, k: i32) -> (f64, f64) {
    use folrho_core::rho::{covering_matrix, pullback_partial, rho_imag};
    let mut r = rng(seed);
    let tol = Tolerances::default();
    let s = super::scenes::covering_scene(&mut r);
    let v = rho_imag(&s.pc, &s.c, &s.h, &s.cf, &tol).unwrap();
    let m = covering_matrix(3, 0, k);
    let pc = pullback_partial(&s.pc, &m, &tol).unwrap();
    let w = rho_imag(&pc, &s.c.pullback(&m), &s.h, &s.cf.pullback(&m), &tol).unwrap();
    ((w - v * k as f64).norm(), v.norm())
}

/// `|ρ(s′) − ρ(s) − e_{[V]}(s′,s)|` in ℂ/ℤ on the circle.
pub fn framing_difference(r_hol: f64) -> f64 {
    use folrho_core::rho::{circle_bundle, e_relative, rho_s1, FramingData};
    use folrho_core::spectral::{mod_one_distance, EtaMethod};
    let tol = Tolerances::default();
    let s = FramingData::trivial(1, 2);
    let j = super::real_mat(2, &[0.0, 1.3, -1.3, 0.0]);
    let s2 = FramingData::new(constant_connection(1, &[j], true), &tol).unwrap();
    let a = rho_s1(r_hol, &s2, EtaMethod::ClosedForm, &tol).unwrap();
    let b = rho_s1(r_hol, &s, EtaMethod::ClosedForm, &tol).unwrap();
    let e = e_relative(&s2, &s, &chern_character(&circle_bundle(r_hol)), &tol).unwrap();
    mod_one_distance(a.real_part - b.real_part, e.re).max((a.imag_part - b.imag_part - e.im).abs())
}

// ---------- WO_q on T⁵ ----------

/// `(|i⟨Δ(U),[M]⟩ − ρ^{iℝ}|, |ρ^{iℝ}|)` on a codimension-two coordinate scene of T⁵.
pub fn delta_u_pairing(seed: u64) -> (f64, f64) {
    use folrho_core::rho::rho_imag;
    use folrho_core::wo::{delta_pairing, universal_class, WoConfig};
    let mut r = rng(seed);
    let tol = Tolerances::default();
    let (pc, cf) = super::scenes::coordinate_extension(&mut r, 5, &[0, 1, 2], 2, 1, true);
    let h = metric(&mut r, 2, true);
    let u = universal_class(WoConfig::new(2), 5).unwrap();
    let lhs = delta_pairing(&u, &cf, &h, &tol).unwrap();
    let rho = rho_imag(&pc, &cf, &h, &cf, &tol).unwrap();
    ((lhs - rho).norm(), rho.norm())
}

/// kt_class_relation residual for a random real rank-1 connection on T³.
pub fn kt_rank_one(seed: u64) -> f64 {
    use folrho_core::connections::HermMetric;
    use folrho_core::wo::kt_class_relation;
    let mut r = rng(seed);
    let c = Connection::new(super::real_one_form(&mut r, 3, 2, 1), true).unwrap();
    kt_class_relation(1, &c, &HermMetric::identity(1), &Tolerances::default()).unwrap().residual()
}
