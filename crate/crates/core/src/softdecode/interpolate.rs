use std::cmp::Ordering;

use super::multiplicity::constraint_count;
use crate::algebra::{BiPoly, Elem, Field};

/// An interpolation point (x, y) with required multiplicity m.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InterpolationPoint {
    pub x: Elem,
    pub y: Elem,
    pub m: u32,
}

/// Number of monomials X^i Y^j with i + w j <= d.
pub fn monomial_count(d: u64, w: u64) -> u128 {
    if w == 0 {
        return u128::MAX;
    }
    let j = (d / w) as u128;
    let (d, w) = (d as u128, w as u128);
    (j + 1) * (d + 1) - w * j * (j + 1) / 2
}

/// Smallest D with more monomials of (1, w)-weighted degree <= D than
/// `cost` constraints; a nonzero interpolant of weighted degree <= D exists.
pub fn weighted_degree_bound(cost: u64, w: u64) -> u64 {
    if w == 0 {
        return 0;
    }
    let (mut lo, mut hi) = (0u64, 1u64);
    while monomial_count(hi, w) <= cost as u128 {
        hi *= 2;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if monomial_count(mid, w) > cost as u128 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Monomial order: weighted degree first, then Y-degree.
fn leading_key(q: &BiPoly, w: usize) -> (usize, usize) {
    let mut best = (0, 0);
    for (j, row) in q.rows().iter().enumerate() {
        if let Some(d) = row.degree() {
            let key = (d + w * j, j);
            if key > best {
                best = key;
            }
        }
    }
    best
}

/// Nonzero Q of minimal (1, w)-weighted degree (ties broken towards lower
/// Y-degree) vanishing to order >= m at every point, by Koetter's
/// incremental algorithm.
pub fn interpolate(field: &Field, points: &[InterpolationPoint], w: usize) -> BiPoly {
    let cost: u64 = points.iter().map(|pt| constraint_count(pt.m)).sum();
    let max_y = if w == 0 { cost as usize } else { (weighted_degree_bound(cost, w as u64) / w as u64) as usize };
    let mut basis: Vec<BiPoly> = (0..=max_y)
        .map(|j| BiPoly::from_terms(field, &[(0, j, Elem::ONE)]))
        .collect();
    let mut keys: Vec<(usize, usize)> = basis.iter().map(|g| leading_key(g, w)).collect();

    for pt in points {
        for b in 0..pt.m as usize {
            for a in 0..pt.m as usize - b {
                let deltas: Vec<Elem> = basis.iter().map(|g| g.hasse(field, a, b, pt.x, pt.y)).collect();
                let Some(star) = (0..basis.len())
                    .filter(|&j| !deltas[j].is_zero())
                    .min_by(|&i, &j| keys[i].cmp(&keys[j]).then(i.cmp(&j)))
                else {
                    continue;
                };
                let pivot = basis[star].clone();
                let d_star = deltas[star];
                for j in 0..basis.len() {
                    if j == star || deltas[j].is_zero() {
                        continue;
                    }
                    basis[j] = basis[j].scale(field, d_star).sub(field, &pivot.scale(field, deltas[j]));
                }
                basis[star] = pivot.mul_x_linear(field, pt.x);
                keys[star] = leading_key(&basis[star], w);
            }
        }
    }

    let best = (0..basis.len())
        .min_by(|&i, &j| match keys[i].cmp(&keys[j]) {
            Ordering::Equal => i.cmp(&j),
            o => o,
        })
        .expect("at least one basis polynomial");
    basis.swap_remove(best)
}
