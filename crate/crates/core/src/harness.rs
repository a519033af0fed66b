//! Experiment orchestration: seeded noise, planted-vector trials, lattice
//! verification and oracle comparisons, with deterministic JSON reports.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::algebra::Field;
use crate::codes::CodeTower;
use crate::construction_d::{ConstructionDLattice, HermiteReport, MinDistanceCertificate, MAX_ENUMERATION_DIM};
use crate::error::{Error, Result};
use crate::lattice_decoder::{enumeration_oracle, lattice_list_decode, CallAudit, DecoderStack};
use crate::optimality::{verify_optimality, OptimalityReport, KKT_TOLERANCE};

/// Independent stream `trial` of the generator seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A uniformly random direction scaled to norm exactly `radius`.
pub fn sample_noise<R: Rng + ?Sized>(n: usize, radius: f64, rng: &mut R) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("noise dimension must be positive".into()));
    }
    if !(radius >= 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius {radius} must be finite and nonnegative")));
    }
    if radius == 0.0 {
        return Ok(vec![0.0; n]);
    }
    loop {
        let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return Ok(g.into_iter().map(|x| x * radius / norm).collect());
        }
    }
}

/// A random integer combination of the basis rows with coefficients in
/// [-coeff_bound, coeff_bound], checked for membership.
pub fn sample_lattice_vector<R: Rng + ?Sized>(lat: &ConstructionDLattice, coeff_bound: i64, rng: &mut R) -> Result<Vec<i64>> {
    if coeff_bound < 1 {
        return Err(Error::InvalidParameter("coefficient bound must be at least 1".into()));
    }
    let mut v = vec![0i64; lat.n()];
    for row in lat.basis() {
        let a = rng.random_range(-coeff_bound..=coeff_bound);
        if a != 0 {
            for (x, &b) in v.iter_mut().zip(row) {
                *x += a * b;
            }
        }
    }
    if !lat.member(lat.ell(), &v) {
        return Err(Error::InvalidParameter("sampled combination failed the membership check".into()));
    }
    Ok(v)
}

/// The lattice of the binary BCH tower with d_i = 4^i over F_q.
pub fn dense_lattice(q: u32, ell: usize) -> Result<ConstructionDLattice> {
    if q < 4 || !q.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("q = {q} must be a power of two, at least 4")));
    }
    let field = Field::shared(2, q.trailing_zeros())?;
    ConstructionDLattice::new(CodeTower::dense(field, ell)?)
}

/// Radius 2^ℓ sqrt((1 - ε)/2).
pub fn decoding_radius(ell: usize, epsilon: f64) -> f64 {
    (1u64 << ell) as f64 * ((1.0 - epsilon) / 2.0).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub q: u32,
    pub ell: usize,
    pub epsilon: f64,
    pub trials: usize,
    /// Noise norm as a fraction of the decoding radius.
    pub noise_fraction: f64,
    pub seed: u64,
    /// Coefficient range for the transmitted lattice vectors.
    pub coeff_bound: i64,
    pub output_path: Option<String>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.noise_fraction > 0.0 && self.noise_fraction <= 1.0) {
            return Err(Error::InvalidParameter(format!("noise fraction {} must lie in (0, 1]", self.noise_fraction)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon {} must lie in (0, 1)", self.epsilon)));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be positive".into()));
        }
        if self.coeff_bound < 1 {
            return Err(Error::InvalidParameter("coefficient bound must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeStats {
    pub n: usize,
    pub ell: usize,
    pub q: u32,
    pub det: String,
    pub lambda1: Option<u64>,
    pub hermite: HermiteReport,
    pub max_basis_norm: f64,
    pub basis_norm_bound: f64,
}

impl LatticeStats {
    pub fn of(lat: &ConstructionDLattice) -> Result<LatticeStats> {
        let hermite = lat.hermite_report()?;
        Ok(LatticeStats {
            n: lat.n(),
            ell: lat.ell(),
            q: hermite.q,
            det: lat.det().to_string(),
            lambda1: lat.lambda1_claim(),
            hermite,
            max_basis_norm: lat.max_basis_norm(),
            basis_norm_bound: lat.basis_norm_bound(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub recovered: bool,
    pub list_size: usize,
    /// Distance from the received word to the transmitted vector.
    pub distance: f64,
    /// Largest distance among the listed vectors.
    pub max_list_distance: f64,
    pub sound: bool,
    pub audit: CallAudit,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rng: String,
    pub radius: f64,
    pub noise_norm: f64,
    pub lattice: LatticeStats,
    pub trials: Vec<TrialOutcome>,
    pub recovered: usize,
    pub success_rate: f64,
    pub all_sound: bool,
    pub audits_consistent: bool,
    pub max_list_size: usize,
}

impl ExperimentReport {
    pub fn passed(&self) -> bool {
        self.recovered == self.trials.len() && self.all_sound && self.audits_consistent
    }
}

/// Planted-vector trials: v + e with ||e|| = noise_fraction · radius, decoded
/// with the BCH lattice decoder. Trial t draws from stream t of the seed.
pub fn run_experiment(config: &ExperimentConfig, timing: bool) -> Result<ExperimentReport> {
    config.validate()?;
    let lat = dense_lattice(config.q, config.ell)?;
    let lattice = LatticeStats::of(&lat)?;
    let stack = DecoderStack::bch(lat, config.epsilon)?;
    let lat = stack.lattice();
    let ell = lat.ell();
    let radius = stack.radius(ell);
    let noise_norm = config.noise_fraction * radius;
    let sq_limit = radius * radius + stack.tolerance(ell);

    let mut trials = Vec::with_capacity(config.trials);
    for t in 0..config.trials {
        let mut rng = trial_rng(config.seed, t as u64);
        let v = sample_lattice_vector(lat, config.coeff_bound, &mut rng)?;
        let e = sample_noise(lat.n(), noise_norm, &mut rng)?;
        let y: Vec<f64> = v.iter().zip(&e).map(|(&a, &b)| a as f64 + b).collect();
        let start = Instant::now();
        let out = lattice_list_decode(&stack, &y, ell)?;
        let elapsed = start.elapsed();
        let distance = v.iter().zip(&y).map(|(&a, &b)| (a as f64 - b).powi(2)).sum::<f64>().sqrt();
        let max_sq = out.sq_distances.iter().copied().fold(0.0, f64::max);
        trials.push(TrialOutcome {
            trial: t,
            recovered: out.vectors.contains(&v),
            list_size: out.vectors.len(),
            distance,
            max_list_distance: max_sq.sqrt(),
            sound: out.sq_distances.iter().all(|&d| d <= sq_limit),
            audit: out.audit,
            wall_time_ms: timing.then_some(elapsed.as_secs_f64() * 1e3),
        });
    }
    let recovered = trials.iter().filter(|t| t.recovered).count();
    Ok(ExperimentReport {
        config: config.clone(),
        rng: "ChaCha20 (seed_from_u64(seed), stream = trial index)".into(),
        radius,
        noise_norm,
        lattice,
        recovered,
        success_rate: recovered as f64 / config.trials as f64,
        all_sound: trials.iter().all(|t| t.sound),
        audits_consistent: trials.iter().all(|t| t.audit.consistent(ell)),
        max_list_size: trials.iter().map(|t| t.list_size).max().unwrap_or(0),
        trials,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinDistanceReport {
    pub certificate: MinDistanceCertificate,
    pub lower_bound: String,
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeVerification {
    pub n: usize,
    pub ell: usize,
    pub det: String,
    pub det_by_elimination: String,
    pub det_matches: bool,
    pub max_basis_norm: f64,
    pub basis_norm_bound: f64,
    pub basis_norms_ok: bool,
    pub basis_rows_are_members: bool,
    pub hermite: Option<HermiteReport>,
    pub min_distance: Option<MinDistanceReport>,
}

impl LatticeVerification {
    pub fn passed(&self) -> bool {
        self.det_matches
            && self.basis_norms_ok
            && self.basis_rows_are_members
            && self.hermite.as_ref().is_none_or(|h| h.det_bound_holds)
            && self.min_distance.as_ref().is_none_or(|m| m.consistent)
    }
}

/// Determinant, basis norms, Hermite report and a minimum-distance
/// certificate (exhaustive for n <= 16, sampled otherwise).
pub fn verify_lattice(lat: &ConstructionDLattice, samples: usize, seed: u64) -> Result<LatticeVerification> {
    let by_elim = lat.det_by_elimination();
    let max_norm = lat.max_basis_norm();
    let bound = lat.basis_norm_bound();
    let min_distance = match lat.lambda1_claim() {
        Some(_) => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let certificate = lat.min_distance(samples, &mut rng)?;
            Some(MinDistanceReport {
                lower_bound: certificate.lower_bound_kind().into(),
                consistent: certificate.consistent(),
                certificate,
            })
        }
        None => None,
    };
    Ok(LatticeVerification {
        n: lat.n(),
        ell: lat.ell(),
        det: lat.det().to_string(),
        det_by_elimination: by_elim.to_string(),
        det_matches: &by_elim == lat.det(),
        max_basis_norm: max_norm,
        basis_norm_bound: bound,
        basis_norms_ok: max_norm <= bound * (1.0 + 1e-12),
        basis_rows_are_members: lat.basis().iter().all(|r| lat.member(lat.ell(), r)),
        hermite: lat.tower().field().map(|_| lat.hermite_report()).transpose()?,
        min_distance,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTrial {
    pub trial: usize,
    pub epsilon: f64,
    pub decoded: usize,
    pub enumerated: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub q: u32,
    pub ell: usize,
    pub seed: u64,
    pub trials: Vec<ComparisonTrial>,
    pub mismatches: usize,
    pub nonempty: usize,
}

/// Targets are lattice vectors plus noise of norm uniform in
/// [0, 1.25 · radius]; the decoder's list must equal the enumeration.
pub fn oracle_compare(q: u32, ell: usize, epsilons: &[f64], trials: usize, seed: u64) -> Result<OracleComparison> {
    let lat = dense_lattice(q, ell)?;
    if lat.n() > MAX_ENUMERATION_DIM {
        return Err(Error::DimensionTooLarge { n: lat.n(), max: MAX_ENUMERATION_DIM });
    }
    let mut out = Vec::new();
    for (ei, &eps) in epsilons.iter().enumerate() {
        let stack = DecoderStack::bch(lat.clone(), eps)?;
        let radius = stack.radius(ell);
        for t in 0..trials {
            let mut rng = trial_rng(seed, (ei * trials + t) as u64);
            let v = sample_lattice_vector(&lat, 2, &mut rng)?;
            let norm = rng.random_range(0.0..1.25) * radius;
            let e = sample_noise(lat.n(), norm, &mut rng)?;
            let y: Vec<f64> = v.iter().zip(&e).map(|(&a, &b)| a as f64 + b).collect();
            let got = lattice_list_decode(&stack, &y, ell)?.vectors;
            let expect = enumeration_oracle(&lat, &y, radius)?;
            out.push(ComparisonTrial { trial: t, epsilon: eps, decoded: got.len(), enumerated: expect.len(), equal: got == expect });
        }
    }
    Ok(OracleComparison {
        q,
        ell,
        seed,
        mismatches: out.iter().filter(|t| !t.equal).count(),
        nonempty: out.iter().filter(|t| t.enumerated > 0).count(),
        trials: out,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimalitySweep {
    pub reports: Vec<OptimalityReport>,
    pub max_kkt_violation: f64,
    pub max_deviation: f64,
}

impl OptimalitySweep {
    pub fn passed(&self) -> bool {
        self.max_kkt_violation < KKT_TOLERANCE && self.max_deviation <= 1e-6
    }
}

pub fn optimality_sweep(p: u32, deltas: &[f64]) -> Result<OptimalitySweep> {
    let reports = deltas.iter().map(|&d| verify_optimality(d, p)).collect::<Result<Vec<_>>>()?;
    Ok(OptimalitySweep {
        max_kkt_violation: reports.iter().map(|r| r.max_kkt_violation).fold(0.0, f64::max),
        max_deviation: reports.iter().map(|r| r.max_deviation).fold(0.0, f64::max),
        reports,
    })
}

/// A received word on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReceivedWord {
    pub y: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecodeReport {
    pub epsilon: f64,
    pub radius: f64,
    pub vectors: Vec<Vec<i64>>,
    pub distances: Vec<f64>,
    pub audit: CallAudit,
}

pub fn decode_received(lat: &ConstructionDLattice, y: &[f64], epsilon: f64) -> Result<DecodeReport> {
    let stack = DecoderStack::bch(lat.clone(), epsilon)?;
    let ell = lat.ell();
    let out = lattice_list_decode(&stack, y, ell)?;
    Ok(DecodeReport {
        epsilon,
        radius: stack.radius(ell),
        distances: out.sq_distances.iter().map(|d| d.sqrt()).collect(),
        vectors: out.vectors,
        audit: out.audit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noise_has_exact_norm() {
        let mut rng = trial_rng(1, 0);
        assert_eq!(sample_noise(5, 0.0, &mut rng).unwrap(), vec![0.0; 5]);
        for n in [1usize, 2, 15, 255] {
            let e = sample_noise(n, 1.7, &mut rng).unwrap();
            let norm = e.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.7).abs() <= 1e-12);
        }
        assert!(sample_noise(0, 1.0, &mut rng).is_err());
        let a = sample_noise(8, 1.0, &mut trial_rng(5, 3)).unwrap();
        let b = sample_noise(8, 1.0, &mut trial_rng(5, 3)).unwrap();
        let c = sample_noise(8, 1.0, &mut trial_rng(5, 4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn lattice_samples_are_members() {
        let lat = dense_lattice(16, 1).unwrap();
        let mut rng = trial_rng(0, 0);
        for _ in 0..50 {
            let v = sample_lattice_vector(&lat, 2, &mut rng).unwrap();
            assert!(lat.member(1, &v));
        }
        for row in lat.basis() {
            let norm = row.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt();
            assert!(norm <= lat.basis_norm_bound());
        }
    }

    #[test]
    fn experiment_is_deterministic() {
        let config = ExperimentConfig {
            q: 16,
            ell: 1,
            epsilon: 0.25,
            trials: 5,
            noise_fraction: 0.95,
            seed: 7,
            coeff_bound: 2,
            output_path: None,
        };
        let a = serde_json::to_string(&run_experiment(&config, false).unwrap()).unwrap();
        let b = serde_json::to_string(&run_experiment(&config, false).unwrap()).unwrap();
        assert_eq!(a, b);
        let r = run_experiment(&config, false).unwrap();
        assert!(r.passed());
        assert!(r.trials.iter().all(|t| t.distance <= r.radius));
        assert!(!a.contains("wall_time_ms"));
    }

    #[test]
    fn bad_configs() {
        assert!(dense_lattice(12, 1).is_err());
        let mut config = ExperimentConfig {
            q: 16,
            ell: 1,
            epsilon: 0.25,
            trials: 1,
            noise_fraction: 0.0,
            seed: 0,
            coeff_bound: 1,
            output_path: None,
        };
        assert!(run_experiment(&config, false).is_err());
        config.noise_fraction = 1.0;
        config.epsilon = 1.0;
        assert!(run_experiment(&config, false).is_err());
    }
}
