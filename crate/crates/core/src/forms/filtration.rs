use super::foliation::Foliation;
use super::form::Form;

/// Largest `p` with `a ∈ F^p`: every contraction of `a` with `deg(a) − p + 1`
/// frame fields vanishes (sup below `tol`). Zero forms get `codim + 1`.
pub fn filtration_degree(a: &Form, f: &Foliation, tol: f64) -> i32 {
    let codim = f.codim() as i32;
    if a.is_negligible(tol) {
        return codim + 1;
    }
    let d = a.degree();
    // level m holds (last frame index used, iterated contraction)
    let mut level: Vec<(usize, Form)> = vec![(0, a.clone())];
    for m in 1..=d {
        let mut next = Vec::new();
        let mut all_vanish = true;
        for (start, form) in &level {
            for (idx, x) in f.frame().iter().enumerate().skip(*start) {
                let c = form.contract(x);
                if c.is_zero() {
                    continue;
                }
                if !c.is_negligible(tol) {
                    all_vanish = false;
                }
                next.push((idx + 1, c));
            }
        }
        if all_vanish {
            return ((d - m + 1) as i32).min(codim);
        }
        level = next;
    }
    0
}
