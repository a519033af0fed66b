//! Euclidean-metric list decoding of BCH codes over the torus (R/pZ)^n.

use serde::{Deserialize, Serialize};

use crate::codes::BchCode;
use crate::error::{Error, Result};
use crate::softdecode::{cost_cap, kv_decode_with_target, ReliabilityVector, Target, TARGET_TOLERANCE};

/// Inclusive slack on squared-distance comparisons.
pub const DISTANCE_TOLERANCE: f64 = 1e-9;

/// A point of (R/pZ)^n with every coordinate held in [0, p).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusWord {
    p: u32,
    coords: Vec<f64>,
}

fn canonical(x: f64, p: u32) -> f64 {
    let v = x.rem_euclid(p as f64);
    if v >= p as f64 {
        0.0
    } else {
        v
    }
}

/// |x| on R/pZ for a coordinate already in [0, p).
#[inline]
pub fn torus_abs(x: f64, p: u32) -> f64 {
    x.min(p as f64 - x)
}

/// Squared torus distance between a real coordinate and an integer.
#[inline]
pub fn coord_sq_distance(y: f64, c: f64, p: u32) -> f64 {
    let t = torus_abs(canonical(y - c, p), p);
    t * t
}

impl TorusWord {
    pub fn new(p: u32, coords: &[f64]) -> Result<TorusWord> {
        if p < 2 {
            return Err(Error::InvalidParameter(format!("modulus {p} must be at least 2")));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("coordinates must be finite".into()));
        }
        Ok(TorusWord { p, coords: coords.iter().map(|&x| canonical(x, p)).collect() })
    }

    pub fn from_word(p: u32, word: &[u32]) -> TorusWord {
        TorusWord { p, coords: word.iter().map(|&c| (c % p) as f64).collect() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm_sq(&self) -> f64 {
        self.coords.iter().map(|&x| torus_abs(x, self.p).powi(2)).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Squared torus distance to a word over Z_p.
    pub fn sq_distance(&self, word: &[u32]) -> f64 {
        self.coords.iter().zip(word).map(|(&y, &c)| coord_sq_distance(y, c as f64, self.p)).sum()
    }

    /// The reliability image [y]: block i puts 1 - t on floor(y_i) and t on
    /// floor(y_i) + 1 (mod p), where t = y_i - floor(y_i).
    pub fn reliability(&self) -> ReliabilityVector {
        let p = self.p as usize;
        let mut entries = vec![0.0; self.coords.len() * p];
        for (i, &y) in self.coords.iter().enumerate() {
            let lo = y.floor();
            let t = y - lo;
            let lo = lo as usize % p;
            entries[i * p + lo] += 1.0 - t;
            entries[i * p + (lo + 1) % p] += t;
        }
        ReliabilityVector::new(self.p, entries).expect("blocks are convex combinations")
    }
}

/// Torus norm of `y`: each coordinate measured to its nearest representative.
pub fn torus_norm(y: &TorusWord) -> f64 {
    y.norm()
}

/// The reliability image [y] of a torus word.
pub fn reliability_map(y: &TorusWord) -> ReliabilityVector {
    y.reliability()
}

/// S = (1/R* + 1/sqrt(2R*)) / (1 - sqrt(R* / (ε + (1-ε)R*))).
pub fn list_size_bound(r_star: f64, epsilon: f64) -> Result<f64> {
    if !(r_star > 0.0 && r_star < 1.0) {
        return Err(Error::InvalidParameter(format!("adjusted rate {r_star} must lie in (0, 1)")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} must lie in (0, 1)")));
    }
    let num = 1.0 / r_star + 1.0 / (2.0 * r_star).sqrt();
    Ok(num / (1.0 - (r_star / (epsilon + (1.0 - epsilon) * r_star)).sqrt()))
}

/// Decoding parameters derived from (code, ε).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EuclidDecodeParams {
    pub epsilon: f64,
    pub s_bound: f64,
    pub target_sq_radius: f64,
}

impl EuclidDecodeParams {
    pub fn new(code: &BchCode, epsilon: f64) -> Result<EuclidDecodeParams> {
        if code.designed_d() < 2 {
            return Err(Error::InvalidParameter("Euclidean decoding needs designed distance at least 2".into()));
        }
        let s_bound = list_size_bound(code.rs().r_star(), epsilon)?;
        Ok(EuclidDecodeParams { epsilon, s_bound, target_sq_radius: (1.0 - epsilon) * code.designed_d() as f64 / 2.0 })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EuclidDecodeResult {
    /// Codewords within the radius, sorted lexicographically.
    pub codewords: Vec<Vec<u32>>,
    pub sq_distances: Vec<f64>,
    pub params: EuclidDecodeParams,
    /// Size of the soft decoder's list before the distance filter.
    pub raw_list_size: usize,
    pub lambda: f64,
    pub interpolation_cost: u64,
}

/// Every codeword c of `code` with torus ||y - c||^2 <= (1 - ε) d / 2.
pub fn euclid_list_decode(code: &BchCode, y: &TorusWord, epsilon: f64) -> Result<EuclidDecodeResult> {
    if y.n() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), got: y.n() });
    }
    if y.p() != code.p() {
        return Err(Error::InvalidParameter(format!("word modulus {} differs from code characteristic {}", y.p(), code.p())));
    }
    let params = EuclidDecodeParams::new(code, epsilon)?;
    let p = code.p();
    let pi = y.reliability();
    let costs = y
        .coords()
        .iter()
        .map(|&yi| (0..p).map(|c| coord_sq_distance(yi, c as f64, p)).collect())
        .collect();
    let target = Target { costs, budget: params.target_sq_radius + TARGET_TOLERANCE };
    let kv = kv_decode_with_target(code.rs(), &pi, &target, cost_cap(params.s_bound, code.n()))?;

    let field = code.field();
    let mut found: Vec<(Vec<u32>, f64)> = Vec::new();
    for e in &kv.entries {
        let Some(word) = e.word.iter().map(|&s| field.to_subfield(s)).collect::<Option<Vec<u32>>>() else {
            continue;
        };
        let d2 = y.sq_distance(&word);
        if d2 <= params.target_sq_radius + DISTANCE_TOLERANCE && code.contains(&word)? {
            found.push((word, d2));
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let (codewords, sq_distances) = found.into_iter().unzip();
    Ok(EuclidDecodeResult {
        codewords,
        sq_distances,
        params,
        raw_list_size: kv.entries.len(),
        lambda: kv.lambda,
        interpolation_cost: kv.cost,
    })
}
