//! Seeded random scenes, used when `--seed` is given without a scene file.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Real trig polynomial `c + a·cos(x_axis) + b·sin(x_axis)` as a term list.
fn wave(rng: &mut ChaCha8Rng, dim: usize, axis: usize, amp: f64) -> Value {
    let mut k = vec![0; dim];
    let c: f64 = rng.random_range(-amp..amp);
    let a: f64 = rng.random_range(-amp..amp);
    let b: f64 = rng.random_range(-amp..amp);
    let mut terms = vec![json!({"k": k.clone(), "re": c, "im": 0.0})];
    k[axis] = 1;
    terms.push(json!({"k": k.clone(), "re": a / 2.0, "im": -b / 2.0}));
    k[axis] = -1;
    terms.push(json!({"k": k, "re": a / 2.0, "im": b / 2.0}));
    Value::Array(terms)
}

fn one_form(dim: usize, rank: usize, entry: impl FnMut(usize, usize, usize) -> Value) -> Value {
    let mut entry = entry;
    let terms: Vec<Value> = (0..dim)
        .map(|j| {
            let m: Vec<Value> = (0..rank).map(|r| Value::Array((0..rank).map(|c| entry(j, r, c)).collect())).collect();
            json!({"idx": [j + 1], "entry": m})
        })
        .collect();
    json!({"dim": dim, "degree": 1, "rank": rank, "terms": terms})
}

fn bundle(rng: &mut ChaCha8Rng, dim: usize) -> Value {
    let a = one_form(dim, 2, |j, _, _| wave(rng, dim, (j + 1) % dim, 0.5));
    let d: f64 = rng.random_range(-0.3..0.3);
    let metric = json!([[rng.random_range(1.0..2.0), d], [d, rng.random_range(1.0..2.0)]]);
    json!({"rank": 2, "A": a, "real": true, "metric": metric})
}

/// Flat real framing: constant multiples of one rotation generator.
fn framing(rng: &mut ChaCha8Rng, dim: usize) -> Value {
    let t: Vec<f64> = (0..dim).map(|_| rng.random_range(-1.0..1.0)).collect();
    let a = one_form(dim, 2, |j, r, c| json!(if r == c { 0.0 } else if r == 0 { t[j] } else { -t[j] }));
    json!({"rank": 2, "A": a, "real": true})
}

/// Scene on `T^dim`: a rank-one coordinate foliation (codimension one for
/// `gv-check`, with `ω = f·κ`), two rank-2 real bundles, two flat framings and
/// spectral task parameters.
pub fn scene(seed: u64, dim: usize, command: &str) -> Value {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let foliation = if command == "gv-check" {
        let kappa = json!({"dim": dim, "degree": 1, "terms": [{"idx": [dim], "entry": 1.0}]});
        let f = wave(&mut rng, dim, 0, 0.5);
        let omega = json!({"dim": dim, "degree": 1, "terms": [{"idx": [dim], "entry": f}]});
        let mut n: Vec<Value> = vec![json!(0.0); dim];
        n[dim - 1] = json!(1.0);
        json!({"kind": "codim1", "kappa": kappa, "omega": omega, "N": n})
    } else {
        json!({"kind": "coordinate", "axes": [1]})
    };
    let bundles = vec![bundle(&mut rng, dim), bundle(&mut rng, dim)];
    let framings = vec![framing(&mut rng, dim), framing(&mut rng, dim)];
    let task = json!({
        "a": rng.random_range(0.05..0.95),
        "sigma": rng.random_range(0.5..10.0),
        "perturbations": [],
        "p": 1,
        "n": (dim - 1) / 2,
    });
    json!({
        "dim": dim,
        "seed": seed,
        "foliation": foliation,
        "bundles": bundles,
        "framings": framings,
        "task": task,
    })
}
