use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_ball, MAX_ENUMERATION_DIM};
use super::intlinalg::{abs_determinant, hermite_normal_form};
use crate::codes::CodeTower;
use crate::error::{Error, Result};

/// How the integer basis was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    /// Rows p^{i_j} b̄_j; used when every basis vector has leading entry 1.
    ScaledRepresentatives,
    /// Hermite normal form of the rows p^{i_j} b̄_j together with p^ℓ Z^n.
    Hermite,
}

/// The Construction D lattice Λ_ℓ of a code tower, with
/// Λ_0 = Z^n and Λ_i = C̃_i + p Λ_{i-1}, where C̃_i lifts each codeword
/// through its coefficients in the tower basis with entries in 0..p.
#[derive(Clone, Debug)]
pub struct ConstructionDLattice {
    tower: CodeTower,
    lifts: Vec<Vec<i64>>,
    exponents: Vec<u32>,
    basis: Vec<Vec<i64>>,
    kind: BasisKind,
    det: BigUint,
}

/// v = c̃_i + p (c̃_{i-1} + p (... + p z)), outermost codeword first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub codewords: Vec<Vec<u32>>,
    pub base: Vec<i64>,
}

impl ConstructionDLattice {
    pub fn new(tower: CodeTower) -> Result<ConstructionDLattice> {
        let p = tower.p() as i64;
        let n = tower.n();
        let ell = tower.ell();
        let top = checked_pow(p, ell as u32)?;
        if top.checked_mul(p).is_none() {
            return Err(Error::Overflow);
        }
        let lifts: Vec<Vec<i64>> = tower.basis().iter().map(|b| b.iter().map(|&x| x as i64).collect()).collect();
        let dims = tower.dims();
        let exponents: Vec<u32> = (0..n).map(|j| (1..=ell).filter(|&i| j >= dims[i]).count() as u32).collect();
        let scaled: Vec<Vec<i64>> = lifts
            .iter()
            .zip(&exponents)
            .map(|(b, &e)| {
                let s = p.pow(e);
                b.iter().map(|&x| x * s).collect()
            })
            .collect();
        let unit = tower.basis().iter().zip(tower.leads()).all(|(b, &l)| b[l] == 1);
        let (basis, kind) = if unit {
            (scaled, BasisKind::ScaledRepresentatives)
        } else {
            (hermite_normal_form(&scaled, n, top), BasisKind::Hermite)
        };
        let det = closed_form_det(&tower);
        Ok(ConstructionDLattice { tower, lifts, exponents, basis, kind, det })
    }

    pub fn tower(&self) -> &CodeTower {
        &self.tower
    }

    pub fn p(&self) -> u32 {
        self.tower.p()
    }

    pub fn n(&self) -> usize {
        self.tower.n()
    }

    pub fn ell(&self) -> usize {
        self.tower.ell()
    }

    /// Integer representatives b̄_j with entries in 0..p.
    pub fn lifts(&self) -> &[Vec<i64>] {
        &self.lifts
    }

    /// i_j = number of levels i >= 1 whose code excludes basis vector j.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Rows of an integer basis of Λ_ℓ.
    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn basis_kind(&self) -> BasisKind {
        self.kind
    }

    /// p^{sum_i (n - k_i)}.
    pub fn det(&self) -> &BigUint {
        &self.det
    }

    /// |det| of the integer basis by exact elimination.
    pub fn det_by_elimination(&self) -> BigUint {
        abs_determinant(&self.basis).to_biguint().expect("absolute value")
    }

    /// The exponent of p in the determinant.
    pub fn det_exponent(&self) -> u64 {
        det_exponent(&self.tower)
    }

    /// p^ℓ.
    pub fn scale(&self) -> i64 {
        (self.p() as i64).pow(self.ell() as u32)
    }

    pub fn max_basis_norm(&self) -> f64 {
        self.basis.iter().map(|r| sq_norm(r) as f64).fold(0.0, f64::max).sqrt()
    }

    /// (p - 1) p^ℓ sqrt(n).
    pub fn basis_norm_bound(&self) -> f64 {
        (self.p() as f64 - 1.0) * self.scale() as f64 * (self.n() as f64).sqrt()
    }

    /// The lift c̃ = sum ā_j b̄_j over Z of c = sum a_j b_j in C_level.
    pub fn representative(&self, level: usize, codeword: &[u32]) -> Result<Vec<i64>> {
        if level > self.ell() {
            return Err(Error::OutOfRange { what: "level", value: level as u64, limit: self.ell() as u64 });
        }
        let coeffs = self.tower.coefficients(level, codeword).ok_or(Error::NotACodeword)?;
        Ok(self.lift_coefficients(&coeffs))
    }

    fn lift_coefficients(&self, coeffs: &[u32]) -> Vec<i64> {
        let mut v = vec![0i64; self.n()];
        for (&a, b) in coeffs.iter().zip(&self.lifts) {
            if a != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x += a as i64 * y;
                }
            }
        }
        v
    }

    /// Peels v into its codeword digits, or `None` when v is not in Λ_level.
    pub fn decompose(&self, level: usize, v: &[i64]) -> Option<Decomposition> {
        if level > self.ell() || v.len() != self.n() {
            return None;
        }
        let p = self.p() as i64;
        let mut cur = v.to_vec();
        let mut codewords = Vec::with_capacity(level);
        for i in (1..=level).rev() {
            let residue: Vec<u32> = cur.iter().map(|&x| x.rem_euclid(p) as u32).collect();
            let coeffs = self.tower.coefficients(i, &residue)?;
            let lift = self.lift_coefficients(&coeffs);
            for (x, l) in cur.iter_mut().zip(&lift) {
                *x = (*x - l) / p;
            }
            codewords.push(residue);
        }
        Some(Decomposition { codewords, base: cur })
    }

    /// Inverse of [`decompose`](Self::decompose).
    pub fn reconstruct(&self, d: &Decomposition) -> Result<Vec<i64>> {
        let p = self.p() as i64;
        let levels = d.codewords.len();
        let mut v = d.base.clone();
        for (idx, c) in d.codewords.iter().enumerate().rev() {
            let lift = self.representative(levels - idx, c)?;
            for (x, l) in v.iter_mut().zip(&lift) {
                *x = l + p * *x;
            }
        }
        Ok(v)
    }

    pub fn member(&self, level: usize, v: &[i64]) -> bool {
        self.decompose(level, v).is_some()
    }

    /// A random element of Λ_level: random codeword digits over a base
    /// vector with entries in [-base_bound, base_bound].
    pub fn sample_member<R: Rng + ?Sized>(&self, level: usize, base_bound: i64, rng: &mut R) -> Vec<i64> {
        let p = self.p();
        let base: Vec<i64> = (0..self.n()).map(|_| rng.random_range(-base_bound..=base_bound)).collect();
        let codewords = (1..=level)
            .rev()
            .map(|i| {
                let k = self.tower.dims()[i];
                let coeffs: Vec<u32> = (0..k).map(|_| rng.random_range(0..p)).collect();
                let lift = self.lift_coefficients(&coeffs);
                lift.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect()
            })
            .collect();
        self.reconstruct(&Decomposition { codewords, base }).expect("digits are codewords")
    }

    /// 2^ℓ when the tower meets the hypotheses of the minimum-distance
    /// theorem: ℓ = 0, or binary BCH codes with designed distances d_i >= 4^i.
    pub fn lambda1_claim(&self) -> Option<u64> {
        if self.ell() == 0 {
            return Some(1);
        }
        if self.p() != 2 {
            return None;
        }
        let ds = self.tower.designed_distances()?;
        ds.iter().enumerate().all(|(i, &d)| d as u64 >= 4u64.pow(i as u32 + 1)).then(|| 1u64 << self.ell())
    }

    /// Certificate for λ_1 = 2^ℓ: the witness p^ℓ e_1 and either an
    /// exhaustive search (n <= 16) or `samples` random short combinations.
    pub fn min_distance<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> Result<MinDistanceCertificate> {
        let claimed = self
            .lambda1_claim()
            .ok_or_else(|| Error::InvalidTower("the tower does not satisfy d_i >= 4^i over F_2".into()))?;
        let n = self.n();
        let mut witness = vec![0i64; n];
        witness[0] = self.scale();
        debug_assert!(self.member(self.ell(), &witness));
        let claimed_sq = (claimed * claimed) as i64;
        let evidence = if n <= MAX_ENUMERATION_DIM {
            let below = enumerate_ball(&self.basis, &vec![0.0; n], claimed_sq as f64 - 0.5)?;
            let shorter = below.iter().filter(|v| v.iter().any(|&x| x != 0)).count();
            MinDistanceEvidence::Exhaustive { shorter_vectors: shorter }
        } else {
            let mut best = i64::MAX;
            let top = self.scale();
            for _ in 0..samples {
                let v = self.short_sample(top, rng);
                if v.iter().any(|&x| x != 0) {
                    best = best.min(sq_norm(&v));
                }
            }
            MinDistanceEvidence::Sampled { samples, shortest_sq_found: best }
        };
        Ok(MinDistanceCertificate { claimed, witness_sq_norm: sq_norm(&witness), witness, evidence })
    }

    // A sparse ±1 combination of basis rows, centered modulo p^ℓ.
    fn short_sample<R: Rng + ?Sized>(&self, top: i64, rng: &mut R) -> Vec<i64> {
        let n = self.n();
        let terms = rng.random_range(1..=3usize);
        let mut v = vec![0i64; n];
        for _ in 0..terms {
            let row = &self.basis[rng.random_range(0..n)];
            let s = if rng.random_bool(0.5) { 1 } else { -1 };
            for (x, &y) in v.iter_mut().zip(row) {
                *x += s * y;
            }
        }
        for x in v.iter_mut() {
            let r = x.rem_euclid(top);
            *x = if 2 * r > top { r - top } else { r };
        }
        v
    }

    /// Normalized minimum distance and the determinant bound q^{2h^2/3},
    /// h = 2^ℓ, for lattices of binary BCH towers.
    pub fn hermite_report(&self) -> Result<HermiteReport> {
        let field = self
            .tower
            .field()
            .ok_or_else(|| Error::InvalidTower("Hermite report needs a BCH tower".into()))?;
        let n = self.n();
        let r = field.r() as u64;
        let h = 1u64 << self.ell();
        let e = self.det_exponent();
        let log2_p = (self.p() as f64).log2();
        let log2_det = e as f64 * log2_p;
        let lambda1 = self.lambda1_claim();
        Ok(HermiteReport {
            n,
            ell: self.ell(),
            q: field.order(),
            lambda1,
            det: self.det.to_string(),
            log2_det,
            normalized: lambda1.map(|l| l as f64 / (log2_det / n as f64).exp2()),
            bound: (n > 1).then(|| (n as f64 / (n as f64).log2()).sqrt()),
            h,
            log2_det_bound: 2.0 * (h * h) as f64 / 3.0 * r as f64 * log2_p,
            det_bound_holds: 3 * e as u128 <= 2 * r as u128 * (h as u128 * h as u128),
        })
    }
}

/// Exponent sum_{i=1}^{ℓ} (n - k_i).
pub fn det_exponent(tower: &CodeTower) -> u64 {
    let n = tower.n();
    tower.dims()[1..].iter().map(|&k| (n - k) as u64).sum()
}

fn closed_form_det(tower: &CodeTower) -> BigUint {
    let mut d = BigUint::one();
    let p = BigUint::from(tower.p());
    for _ in 0..det_exponent(tower) {
        d *= &p;
    }
    d
}

fn checked_pow(p: i64, e: u32) -> Result<i64> {
    p.checked_pow(e).ok_or(Error::Overflow)
}

pub(crate) fn sq_norm(v: &[i64]) -> i64 {
    v.iter().map(|&x| x * x).sum()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum MinDistanceEvidence {
    /// Number of nonzero vectors with norm below the claim, found by
    /// exhaustive enumeration.
    Exhaustive { shorter_vectors: usize },
    /// Refutation-only search; the lower bound rests on the theorem.
    Sampled { samples: usize, shortest_sq_found: i64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinDistanceCertificate {
    pub claimed: u64,
    pub witness: Vec<i64>,
    pub witness_sq_norm: i64,
    pub evidence: MinDistanceEvidence,
}

impl MinDistanceCertificate {
    /// Whether the evidence is consistent with λ_1 = claimed.
    pub fn consistent(&self) -> bool {
        let sq = (self.claimed * self.claimed) as i64;
        self.witness_sq_norm == sq
            && match self.evidence {
                MinDistanceEvidence::Exhaustive { shorter_vectors } => shorter_vectors == 0,
                MinDistanceEvidence::Sampled { shortest_sq_found, .. } => shortest_sq_found >= sq,
            }
    }

    pub fn lower_bound_kind(&self) -> &'static str {
        match self.evidence {
            MinDistanceEvidence::Exhaustive { .. } => "exhaustive",
            MinDistanceEvidence::Sampled { .. } => "theorem-asserted, sampling-refuted-only",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermiteReport {
    pub n: usize,
    pub ell: usize,
    pub q: u32,
    pub lambda1: Option<u64>,
    /// Decimal string.
    pub det: String,
    pub log2_det: f64,
    /// λ_1 / det^{1/n}.
    pub normalized: Option<f64>,
    /// sqrt(n / log2 n).
    pub bound: Option<f64>,
    pub h: u64,
    pub log2_det_bound: f64,
    pub det_bound_holds: bool,
}
