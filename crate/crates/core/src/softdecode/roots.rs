use crate::algebra::{BiPoly, Elem, Field, Poly};

/// All f with deg f < k and (Y - f(X)) | Q, each once, sorted by
/// coefficients. Roth-Ruckenstein search, every candidate confirmed by
/// trial division.
pub fn y_roots(field: &Field, q: &BiPoly, k: usize) -> Vec<Poly> {
    if q.is_zero() || k == 0 {
        return Vec::new();
    }
    let mut candidates = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    search(field, q.clone(), k, &mut prefix, &mut candidates);
    let mut out: Vec<Poly> = candidates
        .into_iter()
        .map(Poly::from_coeffs)
        .filter(|f| q.substitute_y(field, f).is_zero())
        .collect();
    out.sort();
    out.dedup();
    out
}

fn search(field: &Field, q: BiPoly, k: usize, prefix: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>) {
    let Some(v) = q.x_valuation() else {
        return;
    };
    let q = q.div_x_pow(v);
    if q.row(0).is_zero() {
        // Y divides: the prefix padded with zeros is a root
        out.push(prefix.clone());
    }
    if prefix.len() == k {
        return;
    }
    let at_zero = q.at_x_zero();
    if at_zero.degree().unwrap_or(0) == 0 {
        return;
    }
    for gamma in field.elements() {
        if !at_zero.eval(field, gamma).is_zero() {
            continue;
        }
        prefix.push(gamma);
        search(field, q.compose_xy_plus(field, gamma), k, prefix, out);
        prefix.pop();
    }
}
