//! Recursive list decoding of Construction D lattices from list decoders
//! of the component codes.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::codes::BchCode;
use crate::construction_d::{enumerate_ball, ConstructionDLattice};
use crate::error::{Error, Result};
use crate::euclid::{coord_sq_distance, euclid_list_decode, TorusWord, DISTANCE_TOLERANCE};

/// A list decoder for one code of the tower, in the torus metric of R/pZ.
pub trait ComponentDecoder: Send + Sync {
    /// Every codeword within the decoder's radius of `w`.
    fn decode(&self, w: &TorusWord) -> Result<Vec<Vec<u32>>>;
}

/// All of F_p^n within a torus radius, by depth-first search over the
/// symbols nearest each coordinate.
#[derive(Clone, Debug)]
pub struct FullSpaceDecoder {
    pub sq_radius: f64,
}

impl ComponentDecoder for FullSpaceDecoder {
    fn decode(&self, w: &TorusWord) -> Result<Vec<Vec<u32>>> {
        let p = w.p();
        let bound = self.sq_radius + DISTANCE_TOLERANCE;
        let options: Vec<Vec<(u32, f64)>> = w
            .coords()
            .iter()
            .map(|&y| {
                let mut opts: Vec<(u32, f64)> =
                    (0..p).map(|c| (c, coord_sq_distance(y, c as f64, p))).filter(|o| o.1 <= bound).collect();
                opts.sort_by(|a, b| a.1.total_cmp(&b.1));
                opts
            })
            .collect();
        if options.iter().any(Vec::is_empty) {
            return Ok(Vec::new());
        }
        // suffix[i] = least possible cost of coordinates i..
        let mut suffix = vec![0.0; options.len() + 1];
        for i in (0..options.len()).rev() {
            suffix[i] = suffix[i + 1] + options[i][0].1;
        }
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(options.len());
        full_space_search(&options, &suffix, bound, 0.0, &mut word, &mut out);
        out.sort();
        Ok(out)
    }
}

fn full_space_search(
    options: &[Vec<(u32, f64)>],
    suffix: &[f64],
    bound: f64,
    acc: f64,
    word: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let i = word.len();
    if i == options.len() {
        out.push(word.clone());
        return;
    }
    for &(c, d) in &options[i] {
        if acc + d + suffix[i + 1] > bound {
            break;
        }
        word.push(c);
        full_space_search(options, suffix, bound, acc + d, word, out);
        word.pop();
    }
}

/// Filters an explicit list of codewords by torus distance.
#[derive(Clone, Debug)]
pub struct ExhaustiveDecoder {
    pub codewords: Vec<Vec<u32>>,
    pub sq_radius: f64,
}

impl ComponentDecoder for ExhaustiveDecoder {
    fn decode(&self, w: &TorusWord) -> Result<Vec<Vec<u32>>> {
        Ok(self
            .codewords
            .iter()
            .filter(|c| w.sq_distance(c) <= self.sq_radius + DISTANCE_TOLERANCE)
            .cloned()
            .collect())
    }
}

/// The Euclidean soft-decision decoder of a BCH code.
#[derive(Clone, Debug)]
pub struct EuclidComponent {
    pub code: BchCode,
    pub epsilon: f64,
}

impl ComponentDecoder for EuclidComponent {
    fn decode(&self, w: &TorusWord) -> Result<Vec<Vec<u32>>> {
        Ok(euclid_list_decode(&self.code, w, self.epsilon)?.codewords)
    }
}

/// A lattice with one component decoder per level, decoding Λ_i to radius
/// e_i = p^i e_0.
pub struct DecoderStack {
    lat: ConstructionDLattice,
    e0: f64,
    components: Vec<Box<dyn ComponentDecoder>>,
}

impl DecoderStack {
    pub fn new(lat: ConstructionDLattice, e0: f64, components: Vec<Box<dyn ComponentDecoder>>) -> Result<DecoderStack> {
        if !(e0 > 0.0 && e0 < lat.p() as f64 / 2.0) {
            return Err(Error::InvalidParameter(format!("base radius {e0} must lie in (0, p/2)")));
        }
        if components.len() != lat.ell() + 1 {
            return Err(Error::LengthMismatch { expected: lat.ell() + 1, got: components.len() });
        }
        Ok(DecoderStack { lat, e0, components })
    }

    /// Brute-force component decoders over explicitly listed codewords;
    /// for small towers.
    pub fn exhaustive(lat: ConstructionDLattice, e0: f64) -> Result<DecoderStack> {
        let p = lat.p() as f64;
        let mut components: Vec<Box<dyn ComponentDecoder>> = vec![Box::new(FullSpaceDecoder { sq_radius: e0 * e0 })];
        for level in 1..=lat.ell() {
            let r = p.powi(level as i32) * e0;
            components.push(Box::new(ExhaustiveDecoder { codewords: all_codewords(&lat, level)?, sq_radius: r * r }));
        }
        DecoderStack::new(lat, e0, components)
    }

    /// The decoder for binary BCH towers with designed distances d_i >= 4^i:
    /// e_0 = sqrt((1 - ε)/2) and the Euclidean BCH decoder at every level
    /// i >= 1, whose radius sqrt((1 - ε) d_i / 2) is at least 2^i e_0.
    pub fn bch(lat: ConstructionDLattice, epsilon: f64) -> Result<DecoderStack> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon {epsilon} must lie in (0, 1)")));
        }
        if lat.p() != 2 {
            return Err(Error::InvalidTower("the BCH lattice decoder needs a binary tower".into()));
        }
        let ds = lat
            .tower()
            .designed_distances()
            .ok_or_else(|| Error::InvalidTower("the BCH lattice decoder needs a BCH tower".into()))?;
        if ds.iter().enumerate().any(|(i, &d)| (d as u64) < 4u64.pow(i as u32 + 1)) {
            return Err(Error::InvalidTower("designed distances must satisfy d_i >= 4^i".into()));
        }
        let e0 = ((1.0 - epsilon) / 2.0).sqrt();
        let mut components: Vec<Box<dyn ComponentDecoder>> = vec![Box::new(FullSpaceDecoder { sq_radius: e0 * e0 })];
        for level in 1..=lat.ell() {
            let code = lat.tower().bch_code(level).expect("BCH towers carry their codes").clone();
            components.push(Box::new(EuclidComponent { code, epsilon }));
        }
        DecoderStack::new(lat, e0, components)
    }

    pub fn lattice(&self) -> &ConstructionDLattice {
        &self.lat
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    /// e_i = p^i e_0.
    pub fn radius(&self, level: usize) -> f64 {
        (self.lat.p() as f64).powi(level as i32) * self.e0
    }

    /// Absolute slack on squared distances at `level`: the component
    /// tolerance scaled by p^{2 level}.
    pub fn tolerance(&self, level: usize) -> f64 {
        DISTANCE_TOLERANCE * (self.lat.p() as f64).powi(2 * level as i32)
    }
}

/// All codewords of C_level from the tower basis.
fn all_codewords(lat: &ConstructionDLattice, level: usize) -> Result<Vec<Vec<u32>>> {
    let p = lat.p() as u64;
    let k = lat.tower().dims()[level];
    let total = p.checked_pow(k as u32).filter(|&t| t <= 1 << 20).ok_or(Error::DimensionTooLarge { n: k, max: 20 })?;
    let basis = &lat.tower().basis()[..k];
    let n = lat.n();
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut t = idx;
        let mut word = vec![0u64; n];
        for b in basis {
            let a = t % p;
            t /= p;
            for (x, &y) in word.iter_mut().zip(b) {
                *x = (*x + a * y as u64) % p;
            }
        }
        out.push(word.into_iter().map(|x| x as u32).collect());
    }
    out.sort();
    Ok(out)
}

/// c̃ + p round((y - c̃)/p), coordinatewise, halves rounded up.
pub fn round_decode_z(y: &[f64], lift: &[i64], p: u32) -> Vec<i64> {
    let p = p as i64;
    y.iter()
        .zip(lift)
        .map(|(&yi, &c)| c + p * ((yi - c as f64) / p as f64 + 0.5).floor() as i64)
        .collect()
}

/// Per-level invocation counts of one decode.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallAudit {
    /// Number of component-decoder calls at each level.
    pub calls: Vec<u64>,
    /// Total list length returned at each level, summed over calls.
    pub list_totals: Vec<u64>,
    /// Largest list returned at each level.
    pub max_list_sizes: Vec<u64>,
}

impl CallAudit {
    fn new(levels: usize) -> CallAudit {
        CallAudit { calls: vec![0; levels], list_totals: vec![0; levels], max_list_sizes: vec![0; levels] }
    }

    /// Checks the recursion-tree structure for a decode started at `top`:
    /// one call at the top, each lower level called once per codeword listed
    /// above it, and never more than the product of the larger levels' list
    /// sizes.
    pub fn consistent(&self, top: usize) -> bool {
        if self.calls.len() <= top || self.calls[top] != 1 {
            return false;
        }
        (0..top).all(|i| {
            let product: u128 = self.max_list_sizes[i + 1..=top].iter().map(|&s| s as u128).product();
            self.calls[i] == self.list_totals[i + 1] && self.calls[i] as u128 <= product
        })
    }
}

/// Lattice vectors within the radius, sorted, with squared distances.
#[derive(Clone, Debug)]
pub struct LatticeDecodeResult {
    pub vectors: Vec<Vec<i64>>,
    pub sq_distances: Vec<f64>,
    pub audit: CallAudit,
    /// Time spent inside the component decoders at each level.
    pub component_time: Vec<Duration>,
    pub total_time: Duration,
}

struct Recorder {
    audit: CallAudit,
    component_time: Vec<Duration>,
}

/// Every v in Λ_level with ||y - v|| <= e_level.
pub fn lattice_list_decode(stack: &DecoderStack, y: &[f64], level: usize) -> Result<LatticeDecodeResult> {
    let lat = &stack.lat;
    if level > lat.ell() {
        return Err(Error::OutOfRange { what: "level", value: level as u64, limit: lat.ell() as u64 });
    }
    if y.len() != lat.n() {
        return Err(Error::LengthMismatch { expected: lat.n(), got: y.len() });
    }
    if y.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParameter("received word must be finite".into()));
    }
    let start = Instant::now();
    let mut rec = Recorder { audit: CallAudit::new(lat.ell() + 1), component_time: vec![Duration::ZERO; lat.ell() + 1] };
    let mut vectors = decode_level(stack, y, level, &mut rec)?;
    vectors.sort();
    vectors.dedup();
    let sq_distances = vectors.iter().map(|v| sq_dist(y, v)).collect();
    Ok(LatticeDecodeResult {
        vectors,
        sq_distances,
        audit: rec.audit,
        component_time: rec.component_time,
        total_time: start.elapsed(),
    })
}

/// Decodes Λ_ℓ of a binary BCH tower to radius 2^ℓ sqrt((1 - ε)/2).
pub fn bch_lattice_decode(lat: &ConstructionDLattice, y: &[f64], epsilon: f64) -> Result<LatticeDecodeResult> {
    let stack = DecoderStack::bch(lat.clone(), epsilon)?;
    lattice_list_decode(&stack, y, lat.ell())
}

fn sq_dist(y: &[f64], v: &[i64]) -> f64 {
    y.iter().zip(v).map(|(&a, &b)| (a - b as f64).powi(2)).sum()
}

fn decode_level(stack: &DecoderStack, y: &[f64], level: usize, rec: &mut Recorder) -> Result<Vec<Vec<i64>>> {
    let lat = &stack.lat;
    let p = lat.p();
    let w = TorusWord::new(p, y)?;
    let t0 = Instant::now();
    let list = stack.components[level].decode(&w).map_err(|e| Error::Level { level, source: Box::new(e) })?;
    rec.component_time[level] += t0.elapsed();
    rec.audit.calls[level] += 1;
    rec.audit.list_totals[level] += list.len() as u64;
    rec.audit.max_list_sizes[level] = rec.audit.max_list_sizes[level].max(list.len() as u64);

    let mut out = Vec::new();
    for c in &list {
        let lift = lat.representative(level, c).map_err(|e| Error::Level { level, source: Box::new(e) })?;
        if level == 0 {
            out.push(round_decode_z(y, &lift, p));
        } else {
            let pf = p as f64;
            let next: Vec<f64> = y.iter().zip(&lift).map(|(&a, &b)| (a - b as f64) / pf).collect();
            for v in decode_level(stack, &next, level - 1, rec)? {
                out.push(lift.iter().zip(&v).map(|(&a, &b)| a + p as i64 * b).collect());
            }
        }
    }
    let e = stack.radius(level);
    let limit = e * e + stack.tolerance(level);
    for v in &out {
        let d2 = sq_dist(y, v);
        if d2 > limit {
            return Err(Error::SoundnessViolation { sq_dist: d2, sq_radius: e * e });
        }
    }
    Ok(out)
}

/// Every vector of the lattice within `radius` of y (plus the top-level
/// tolerance of the decoder), by exhaustive enumeration; n <= 16.
pub fn enumeration_oracle(lat: &ConstructionDLattice, y: &[f64], radius: f64) -> Result<Vec<Vec<i64>>> {
    let slack = DISTANCE_TOLERANCE * (lat.p() as f64).powi(2 * lat.ell() as i32);
    enumerate_ball(lat.basis(), y, radius * radius + slack)
}
