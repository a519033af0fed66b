use super::certificate::{exists_low_score_word, Choice};
use super::interpolate::{interpolate, weighted_degree_bound, InterpolationPoint};
use super::multiplicity::{BreakpointWalk, MultiplicityMatrix};
use super::reliability::ReliabilityVector;
use super::roots::y_roots;
use crate::algebra::{Elem, Poly};
use crate::codes::RsCode;
use crate::error::{Error, Result};

/// Slack granted to target-membership comparisons so that words exactly on
/// the boundary are always covered by the certificate.
pub const TARGET_TOLERANCE: f64 = 1e-9;

/// A set of words the decoder must certainly output when they are
/// codewords: all x with sum_i costs[i][x_i] <= budget. `costs[i]` has one
/// entry per symbol of F_p, optionally followed by one entry for symbols of
/// F_q outside F_p.
#[derive(Clone, Debug)]
pub struct Target {
    pub costs: Vec<Vec<f64>>,
    pub budget: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KvEntry {
    pub message: Poly,
    pub word: Vec<Elem>,
    pub score: u64,
}

/// Codewords recovered by soft-decision decoding, sorted by symbols.
#[derive(Clone, Debug)]
pub struct KvDecodeResult {
    pub entries: Vec<KvEntry>,
    pub lambda: f64,
    pub cost: u64,
    pub degree_bound: u64,
    pub interpolant_wdeg: usize,
    pub breakpoints_visited: usize,
}

/// 1/R* + 1/sqrt(2 R*), the list-size threshold S must exceed.
pub fn list_bound_floor(r_star: f64) -> f64 {
    1.0 / r_star + 1.0 / (2.0 * r_star).sqrt()
}

/// sqrt(k-1) / (1 - (1/S)(1/R* + 1/sqrt(2R*))), the normalized inner
/// product above which codewords are guaranteed to be listed.
pub fn guarantee_threshold(code: &RsCode, s_bound: f64) -> Result<f64> {
    if code.k() < 2 {
        return Err(Error::InvalidParameter("soft decoding needs dimension k >= 2".into()));
    }
    let floor = list_bound_floor(code.r_star());
    if !(s_bound > floor) {
        return Err(Error::ListBoundTooSmall { s: s_bound, min: floor });
    }
    Ok(((code.k() - 1) as f64).sqrt() / (1.0 - floor / s_bound))
}

/// Interpolation cost cap ceil(4 S^2 n).
pub fn cost_cap(s_bound: f64, n: usize) -> u64 {
    (4.0 * s_bound * s_bound * n as f64).ceil() as u64
}

fn check_shapes(code: &RsCode, pi: &ReliabilityVector) -> Result<()> {
    if pi.n() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), got: pi.n() });
    }
    if pi.p() != code.field().p() {
        return Err(Error::InvalidParameter(format!(
            "reliability alphabet {} differs from the characteristic {}",
            pi.p(),
            code.field().p()
        )));
    }
    Ok(())
}

/// Lists every codeword with <Π, [c]> >= T ||Π|| where T is
/// [`guarantee_threshold`].
pub fn kv_decode(code: &RsCode, pi: &ReliabilityVector, s_bound: f64) -> Result<KvDecodeResult> {
    check_shapes(code, pi)?;
    let threshold = guarantee_threshold(code, s_bound)? * pi.norm();
    let p = pi.p();
    let outside = code.field().order() > p;
    let costs = (0..pi.n())
        .map(|i| {
            let mut row: Vec<f64> = pi.block(i).iter().map(|&x| -x).collect();
            if outside {
                row.push(0.0);
            }
            row
        })
        .collect();
    let target = Target { costs, budget: -threshold + TARGET_TOLERANCE };
    kv_decode_with_target(code, pi, &target, cost_cap(s_bound, code.n()))
}

/// Soft-decision decoding with λ chosen as the first breakpoint at which
/// every word of `target` provably scores above the interpolant's weighted
/// degree.
pub fn kv_decode_with_target(
    code: &RsCode,
    pi: &ReliabilityVector,
    target: &Target,
    cap: u64,
) -> Result<KvDecodeResult> {
    check_shapes(code, pi)?;
    if target.costs.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), got: target.costs.len() });
    }
    let p = pi.p() as usize;
    if target.costs.iter().any(|c| c.len() != p && c.len() != p + 1) {
        return Err(Error::InvalidParameter("target cost rows must have p or p + 1 entries".into()));
    }
    let w = code.k().saturating_sub(1) as u64;

    let mut visited = 0;
    let mut chosen: Option<(MultiplicityMatrix, u64)> = None;
    for m in BreakpointWalk::new(pi) {
        visited += 1;
        if m.cost() > cap {
            return Err(Error::CostCapExceeded { cost: m.cost(), cap });
        }
        let bound = weighted_degree_bound(m.cost(), w);
        if certified(&m, target, bound) {
            chosen = Some((m, bound));
            break;
        }
    }
    let (m, bound) = chosen.expect("breakpoints are unbounded for a nonzero reliability vector");

    let field = code.field();
    let mut points = Vec::new();
    for (i, &x) in code.points().iter().enumerate() {
        for c in 0..p as u32 {
            let mult = m.get(i, c);
            if mult > 0 {
                points.push(InterpolationPoint { x, y: Elem(c), m: mult });
            }
        }
    }
    let q = interpolate(field, &points, w as usize);
    let wdeg = q.weighted_degree(w as usize).expect("interpolant is nonzero");

    let mut entries: Vec<KvEntry> = y_roots(field, &q, code.k())
        .into_iter()
        .map(|message| {
            let word = code.encode(&message).expect("roots have degree < k");
            let symbols: Vec<Option<u32>> = word.iter().map(|&s| field.to_subfield(s)).collect();
            let score = m.score(&symbols);
            KvEntry { message, word, score }
        })
        .filter(|e| e.score > wdeg as u64)
        .collect();
    entries.sort_by(|a, b| a.word.cmp(&b.word));
    entries.dedup_by(|a, b| a.word == b.word);

    Ok(KvDecodeResult {
        entries,
        lambda: m.lambda(),
        cost: m.cost(),
        degree_bound: bound,
        interpolant_wdeg: wdeg,
        breakpoints_visited: visited,
    })
}

/// True when no target word has score <= `bound`.
fn certified(m: &MultiplicityMatrix, target: &Target, bound: u64) -> bool {
    // cheapest word first: if it is in the target and scores too low, fail fast
    let mut cost = 0.0;
    let mut score = 0u64;
    for (i, row) in target.costs.iter().enumerate() {
        let (c, &v) = row.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).expect("nonempty row");
        cost += v;
        score += if c < m.p() as usize { m.get(i, c as u32) as u64 } else { 0 };
    }
    if cost <= target.budget && score <= bound {
        return false;
    }
    let options: Vec<Vec<Choice>> = target
        .costs
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(c, &cost)| Choice { score: if c < m.p() as usize { m.get(i, c as u32) } else { 0 }, cost })
                .collect()
        })
        .collect();
    !exists_low_score_word(&options, bound, target.budget)
}
