//! Exhaustive enumeration of lattice vectors in a ball (Fincke-Pohst).

use crate::error::{Error, Result};

/// Largest dimension accepted by [`enumerate_ball`].
pub const MAX_ENUMERATION_DIM: usize = 16;

/// All integer combinations v of the rows of `basis` (a full-rank square
/// integer matrix) with ||v - y||^2 <= sq_radius, sorted lexicographically.
pub fn enumerate_ball(basis: &[Vec<i64>], y: &[f64], sq_radius: f64) -> Result<Vec<Vec<i64>>> {
    let n = basis.len();
    if n > MAX_ENUMERATION_DIM {
        return Err(Error::DimensionTooLarge { n, max: MAX_ENUMERATION_DIM });
    }
    if y.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: y.len() });
    }
    if sq_radius < 0.0 {
        return Ok(Vec::new());
    }
    let b: Vec<Vec<f64>> = basis.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();

    // Gram-Schmidt: b_i = b*_i + sum_{j<i} mu[i][j] b*_j
    let mut star: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut norms = vec![0.0; n];
    let mut mu = vec![vec![0.0; n]; n];
    for i in 0..n {
        let mut v = b[i].clone();
        for j in 0..i {
            let m = dot(&b[i], &star[j]) / norms[j];
            mu[i][j] = m;
            for (x, s) in v.iter_mut().zip(&star[j]) {
                *x -= m * s;
            }
        }
        norms[i] = dot(&v, &v);
        if norms[i] <= 1e-9 {
            return Err(Error::InvalidParameter("basis is not full rank".into()));
        }
        star.push(v);
    }
    let t: Vec<f64> = (0..n).map(|i| dot(y, &star[i]) / norms[i]).collect();

    let slack = 1e-7 * (1.0 + sq_radius);
    let mut coeffs = vec![0i64; n];
    let mut out = Vec::new();
    search(n, &mu, &norms, &t, sq_radius + slack, 0.0, &mut coeffs, &mut |u| {
        let v: Vec<i64> = (0..n).map(|c| (0..n).map(|i| u[i] * basis[i][c]).sum()).collect();
        let d2: f64 = v.iter().zip(y).map(|(&a, &b)| (a as f64 - b).powi(2)).sum();
        if d2 <= sq_radius {
            out.push(v);
        }
    });
    out.sort();
    out.dedup();
    Ok(out)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

// Chooses coefficients for rows level-1 down to 0 with the partial squared
// distance `acc` accumulated from rows >= level.
#[allow(clippy::too_many_arguments)]
fn search(
    level: usize,
    mu: &[Vec<f64>],
    norms: &[f64],
    t: &[f64],
    bound: f64,
    acc: f64,
    u: &mut [i64],
    emit: &mut dyn FnMut(&[i64]),
) {
    if level == 0 {
        emit(u);
        return;
    }
    let i = level - 1;
    let n = u.len();
    let center = t[i] - (i + 1..n).map(|j| mu[j][i] * u[j] as f64).sum::<f64>();
    let room = bound - acc;
    if room < 0.0 {
        return;
    }
    let half = (room / norms[i]).sqrt();
    let lo = (center - half).ceil() as i64;
    let hi = (center + half).floor() as i64;
    for x in lo..=hi {
        let d = x as f64 - center;
        let next = acc + norms[i] * d * d;
        if next <= bound {
            u[i] = x;
            search(i, mu, norms, t, bound, next, u, emit);
        }
    }
    u[i] = 0;
}
