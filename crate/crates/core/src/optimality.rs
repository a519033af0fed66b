//! Numerical and certificate checks that the reliability map [y] is the
//! optimal reliability vector at squared distance δn, δ <= 1/4.
//!
//! The question reduces to a per-coordinate convex program: minimize <T, T>
//! over frequency vectors T in the simplex with <T, Δ> <= δ, where Δ holds
//! the squared torus distances from β to each symbol.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance applied to every KKT equation and sign condition.
pub const KKT_TOLERANCE: f64 = 1e-12;
/// Iteration cap of the projected-gradient oracle.
pub const GRADIENT_ITERATION_CAP: usize = 100_000;

/// A probability vector over Z_p.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrequencyVector {
    pub p: u32,
    pub t: Vec<f64>,
}

impl FrequencyVector {
    pub fn inner(&self, delta: &DeltaVector) -> f64 {
        dot(&self.t, &delta.values)
    }

    pub fn norm_sq(&self) -> f64 {
        dot(&self.t, &self.t)
    }

    /// The indicator image of the point β: 1 - β at 0 and β at 1.
    pub fn bracket(p: u32, beta: f64) -> FrequencyVector {
        let mut t = vec![0.0; p as usize];
        t[0] = 1.0 - beta;
        t[1 % p as usize] += beta;
        FrequencyVector { p, t }
    }
}

/// Squared torus distances Δ_α = |α - β|^2 for α in Z_p.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaVector {
    pub p: u32,
    pub beta: f64,
    pub values: Vec<f64>,
}

impl DeltaVector {
    pub fn new(p: u32, beta: f64) -> DeltaVector {
        let pf = p as f64;
        let values = (0..p)
            .map(|a| {
                let d = (a as f64 - beta).abs();
                d.min(pf - d).powi(2)
            })
            .collect();
        DeltaVector { p, beta, values }
    }
}

/// Multipliers certifying that [β] minimizes <T, T> over the constraint set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KktCertificate {
    pub mu: f64,
    pub mu_alpha: Vec<f64>,
    pub lambda_kkt: f64,
    pub max_violation: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= 0.25) {
        return Err(Error::InvalidParameter(format!("delta {delta} must lie in (0, 1/4]")));
    }
    Ok(())
}

fn check_p(p: u32) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!("alphabet size {p} must be at least 2")));
    }
    Ok(())
}

/// The root β in (0, 1/2] of β(1 - β) = δ.
pub fn beta_from_delta(delta: f64) -> Result<f64> {
    check_delta(delta)?;
    // 2δ / (1 + sqrt(1 - 4δ)) avoids cancellation for small δ
    Ok(2.0 * delta / (1.0 + (1.0 - 4.0 * delta).sqrt()))
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(x: &[f64]) -> Vec<f64> {
    let mut u = x.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    let mut theta = 0.0;
    for (j, &v) in u.iter().enumerate() {
        acc += v;
        let t = (acc - 1.0) / (j + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    x.iter().map(|&v| (v - theta).max(0.0)).collect()
}

/// Euclidean projection onto {T in simplex : <T, Δ> <= δ}. The minimizer
/// is the simplex projection of x - ηΔ for the smallest η >= 0 meeting the
/// halfspace; <T(η), Δ> is nonincreasing in η, so η is found by bisection.
fn project_feasible(x: &[f64], d: &[f64], delta: f64) -> Vec<f64> {
    let at = |eta: f64| {
        let shifted: Vec<f64> = x.iter().zip(d).map(|(a, b)| a - eta * b).collect();
        project_simplex(&shifted)
    };
    let t0 = at(0.0);
    if dot(&t0, d) <= delta {
        return t0;
    }
    let mut hi = 1.0;
    while dot(&at(hi), d) > delta {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if dot(&at(mid), d) > delta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(hi)
}

/// Minimizes <T, T> over the constraint set by projected gradient descent
/// with step 0.1/p, restarted from each vertex of the simplex.
pub fn quadratic_min_oracle(delta: f64, p: u32) -> Result<FrequencyVector> {
    check_delta(delta)?;
    check_p(p)?;
    let beta = beta_from_delta(delta)?;
    let dv = DeltaVector::new(p, beta);
    let step = 0.1 / p as f64;
    let mut best: Option<Vec<f64>> = None;
    for seed in 0..p as usize {
        let mut start = vec![0.0; p as usize];
        start[seed] = 1.0;
        let mut t = project_feasible(&start, &dv.values, delta);
        let mut converged = false;
        for _ in 0..GRADIENT_ITERATION_CAP {
            let moved: Vec<f64> = t.iter().map(|&v| v - step * 2.0 * v).collect();
            let next = project_feasible(&moved, &dv.values, delta);
            let change = next.iter().zip(&t).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            t = next;
            if change < 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence { iterations: GRADIENT_ITERATION_CAP });
        }
        if best.as_ref().is_none_or(|b| dot(&t, &t) < dot(b, b)) {
            best = Some(t);
        }
    }
    Ok(FrequencyVector { p, t: best.expect("p >= 2 seeds") })
}

/// Minimizes <T, T> over every feasible T supported on at most two symbols,
/// solving each support in closed form.
pub fn two_support_oracle(delta: f64, p: u32) -> Result<FrequencyVector> {
    check_delta(delta)?;
    check_p(p)?;
    let beta = beta_from_delta(delta)?;
    let d = DeltaVector::new(p, beta).values;
    let p_us = p as usize;
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut consider = |t: Vec<f64>| {
        let obj = dot(&t, &t);
        if best.as_ref().is_none_or(|b| obj < b.0) {
            best = Some((obj, t));
        }
    };
    for a in 0..p_us {
        if d[a] <= delta {
            let mut t = vec![0.0; p_us];
            t[a] = 1.0;
            consider(t);
        }
        for b in a + 1..p_us {
            // weight s on a, 1 - s on b; cost s d_a + (1 - s) d_b <= δ
            let (da, db) = (d[a], d[b]);
            let (mut lo, mut hi) = (0.0f64, 1.0f64);
            if (da - db).abs() < f64::EPSILON {
                if da > delta {
                    continue;
                }
            } else {
                let s_eq = (delta - db) / (da - db);
                if da < db {
                    lo = lo.max(s_eq);
                } else {
                    hi = hi.min(s_eq);
                }
            }
            if lo > hi {
                continue;
            }
            let s = 0.5f64.clamp(lo, hi);
            let mut t = vec![0.0; p_us];
            t[a] = s;
            t[b] = 1.0 - s;
            consider(t);
        }
    }
    let (_, t) = best.expect("the vertex at 0 is always feasible");
    Ok(FrequencyVector { p, t })
}

/// Builds the multipliers for T = [β] and checks stationarity, slackness,
/// primal feasibility and dual signs.
pub fn kkt_verify(delta: f64, p: u32) -> Result<KktCertificate> {
    check_delta(delta)?;
    check_p(p)?;
    let beta = beta_from_delta(delta)?;
    let d = DeltaVector::new(p, beta).values;
    let t = FrequencyVector::bracket(p, beta).t;
    let c = beta * beta - beta + 1.0;
    let mu = 2.0;
    let lambda = -2.0 * c;
    let mu_alpha: Vec<f64> = (0..p as usize).map(|a| if a < 2 { 0.0 } else { 2.0 * (d[a] - c) }).collect();

    let mut worst = 0.0f64;
    let mut check = |what: &str, residual: f64| -> Result<()> {
        worst = worst.max(residual);
        if residual > KKT_TOLERANCE {
            return Err(Error::KktViolation { what: what.into(), residual });
        }
        Ok(())
    };
    for a in 0..p as usize {
        check("stationarity", (2.0 * t[a] + mu * d[a] - mu_alpha[a] + lambda).abs())?;
        check("multiplier sign", (-mu_alpha[a]).max(0.0))?;
        check("coordinate slackness", (mu_alpha[a] * t[a]).abs())?;
        check("nonnegativity", (-t[a]).max(0.0))?;
    }
    let inner = dot(&t, &d);
    check("distance slackness", (mu * (inner - delta)).abs())?;
    check("distance feasibility", (inner - delta).max(0.0))?;
    check("simplex", (t.iter().sum::<f64>() - 1.0).abs())?;
    Ok(KktCertificate { mu, mu_alpha, lambda_kkt: lambda, max_violation: worst })
}

/// ||[y]|| for the word with every coordinate equal to β and n coordinates,
/// built block by block. Equals sqrt(n (1 - 2δ)).
pub fn rate_bound_check(delta: f64, n: usize) -> Result<f64> {
    check_delta(delta)?;
    let beta = beta_from_delta(delta)?;
    let block = FrequencyVector::bracket(2, beta).t;
    let entries: Vec<f64> = (0..n).flat_map(|_| block.iter().copied()).collect();
    Ok(dot(&entries, &entries).sqrt())
}

/// Summary of one optimality check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimalityReport {
    pub delta: f64,
    pub p: u32,
    pub beta: f64,
    pub minimizer: Vec<f64>,
    pub two_support_minimizer: Vec<f64>,
    pub max_deviation: f64,
    pub max_kkt_violation: f64,
    pub objective_gap: f64,
}

/// Runs both oracles and the certificate at (δ, p).
pub fn verify_optimality(delta: f64, p: u32) -> Result<OptimalityReport> {
    let beta = beta_from_delta(delta)?;
    let pgd = quadratic_min_oracle(delta, p)?;
    let pair = two_support_oracle(delta, p)?;
    let kkt = kkt_verify(delta, p)?;
    let bracket = FrequencyVector::bracket(p, beta);
    let max_deviation = pgd
        .t
        .iter()
        .chain(&pair.t)
        .zip(bracket.t.iter().chain(&bracket.t))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(OptimalityReport {
        delta,
        p,
        beta,
        objective_gap: pgd.norm_sq() - bracket.norm_sq(),
        minimizer: pgd.t,
        two_support_minimizer: pair.t,
        max_deviation,
        max_kkt_violation: kkt.max_violation,
    })
}
