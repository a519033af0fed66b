//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dlattice::codes::BchCode;
use dlattice::construction_d::{ConstructionDLattice, MinDistanceEvidence};
use dlattice::euclid::{euclid_list_decode, TorusWord};
use dlattice::harness::{
    dense_lattice, oracle_compare, run_experiment, sample_lattice_vector, sample_noise, trial_rng, ExperimentConfig,
};
use dlattice::lattice_decoder::{lattice_list_decode, DecoderStack};
use dlattice::optimality::{beta_from_delta, verify_optimality, FrequencyVector};
use dlattice::softdecode::{guarantee_threshold, kv_decode, ReliabilityVector};
use dlattice::{CodeTower, Field, Poly, RsCode};
use num_bigint::BigUint;
use rand::Rng;

type Outcome = Result<String, String>;

struct Runner {
    failures: usize,
}

impl Runner {
    fn run(&mut self, id: usize, title: &str, budget: Duration, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= budget => (true, d),
            Ok(d) => (false, format!("{d}; over time budget {budget:?}")),
            Err(d) => (false, d),
        };
        if !ok {
            self.failures += 1;
        }
        println!(
            "criterion {id:>2} {} {title}: {detail} [{:.2}s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Dimension of the binary narrow-sense BCH code of length 2^r - 1 and
/// designed distance d, from the cyclotomic cosets of 2 modulo n.
fn coset_dimension(r: u32, d: usize) -> usize {
    let n = (1usize << r) - 1;
    let mut zeros = BTreeSet::new();
    for s in 1..d {
        let mut x = s % n;
        loop {
            if !zeros.insert(x) {
                break;
            }
            x = (2 * x) % n;
        }
    }
    n - zeros.len()
}

fn determinant_exactness() -> Outcome {
    let mut parts = Vec::new();
    for (q, ell) in [(16u32, 1usize), (64, 1), (64, 2), (256, 3)] {
        let lat = dense_lattice(q, ell).map_err(|e| e.to_string())?;
        let r = q.trailing_zeros();
        let n = lat.n();
        let exponent: usize = (1..=ell).map(|i| n - coset_dimension(r, 4usize.pow(i as u32))).sum();
        let expect = BigUint::from(2u32).pow(exponent as u32);
        let got = lat.det_by_elimination();
        check(got == expect, || format!("q={q} ell={ell}: elimination {got} != 2^{exponent}"))?;
        check(lat.det() == &expect, || format!("q={q} ell={ell}: closed form disagrees"))?;
        parts.push(format!("({q},{ell}) det=2^{exponent}"));
    }
    Ok(parts.join(", "))
}

fn minimum_distance() -> Outcome {
    let mut parts = Vec::new();
    for (q, ell, samples) in [(16u32, 1usize, 0usize), (64, 2, 100_000), (256, 3, 100_000)] {
        let lat = dense_lattice(q, ell).map_err(|e| e.to_string())?;
        let mut rng = trial_rng(2024, ell as u64);
        let cert = lat.min_distance(samples, &mut rng).map_err(|e| e.to_string())?;
        let h = 1i64 << ell;
        check(cert.claimed == h as u64, || format!("q={q}: claimed {}", cert.claimed))?;
        check(cert.witness_sq_norm == h * h && lat.member(ell, &cert.witness), || format!("q={q}: bad witness"))?;
        match cert.evidence {
            MinDistanceEvidence::Exhaustive { shorter_vectors } => {
                check(shorter_vectors == 0, || format!("q={q}: {shorter_vectors} vectors shorter than {h}"))?;
                parts.push(format!("({q},{ell}) lambda1={h} exhaustive"));
            }
            MinDistanceEvidence::Sampled { samples, shortest_sq_found } => {
                check(shortest_sq_found >= h * h, || format!("q={q}: sample of squared norm {shortest_sq_found}"))?;
                parts.push(format!("({q},{ell}) lambda1<={h}, {samples} samples none shorter (min sq {shortest_sq_found})"));
            }
        }
    }
    Ok(parts.join(", "))
}

fn code_oracle_equivalence() -> Outcome {
    let code = BchCode::new(Field::shared(2, 4).unwrap(), 4).map_err(|e| e.to_string())?;
    let all = code.codewords().map_err(|e| e.to_string())?;
    check(all.len() == 128, || format!("{} codewords", all.len()))?;
    let mut nonempty = 0;
    let mut total = 0;
    for (k, eps) in [0.1, 0.25, 0.5].into_iter().enumerate() {
        let r2: f64 = (1.0 - eps) * 4.0 / 2.0;
        for t in 0..100u64 {
            let mut rng = trial_rng(31 + k as u64, t);
            let y: Vec<f64> = if t % 2 == 0 {
                (0..15).map(|_| rng.random_range(0.0..2.0)).collect()
            } else {
                let c = &all[rng.random_range(0..all.len())];
                let dir: Vec<f64> = (0..15).map(|_| rng.random_range(-1.0..1.0)).collect();
                let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
                let scale = rng.random_range(0.0..1.2) * r2.sqrt() / norm;
                c.iter().zip(&dir).map(|(&ci, d)| ci as f64 + d * scale).collect()
            };
            let word = TorusWord::new(2, &y).unwrap();
            let got = euclid_list_decode(&code, &word, eps).map_err(|e| e.to_string())?.codewords;
            // brute force over all codewords with shift-minimized distances
            let expect: Vec<Vec<u32>> = all
                .iter()
                .filter(|c| {
                    let d2: f64 = y
                        .iter()
                        .zip(c.iter())
                        .map(|(&yi, &ci)| {
                            [-2.0, 0.0, 2.0, 4.0].iter().map(|s| (yi - ci as f64 + s).powi(2)).fold(f64::INFINITY, f64::min)
                        })
                        .sum();
                    d2 <= r2 + 1e-9
                })
                .cloned()
                .collect();
            check(got == expect, || format!("eps={eps} trial {t}: decoder {got:?} vs brute force {expect:?}"))?;
            nonempty += usize::from(!expect.is_empty());
            total += 1;
        }
    }
    Ok(format!("{total} words, exact set equality, {nonempty} with nonempty lists"))
}

fn lattice_oracle_equivalence() -> Outcome {
    let cmp = oracle_compare(16, 1, &[0.1, 0.25, 0.5], 100, 77).map_err(|e| e.to_string())?;
    check(cmp.mismatches == 0, || {
        let bad = cmp.trials.iter().find(|t| !t.equal).unwrap();
        format!("{} mismatches, first at eps={} trial {}", cmp.mismatches, bad.epsilon, bad.trial)
    })?;
    Ok(format!("{} targets, exact set equality, {} with nonempty lists", cmp.trials.len(), cmp.nonempty))
}

fn planted_recovery() -> Outcome {
    let config = ExperimentConfig {
        q: 64,
        ell: 2,
        epsilon: 0.25,
        trials: 200,
        noise_fraction: 0.95,
        seed: 7,
        coeff_bound: 2,
        output_path: None,
    };
    let report = run_experiment(&config, false).map_err(|e| e.to_string())?;
    check(report.all_sound, || "a listed vector lies outside the radius".into())?;
    check(report.success_rate == 1.0, || format!("success rate {}", report.success_rate))?;
    Ok(format!(
        "success rate {} over {} trials, radius {:.4}, max list size {}",
        report.success_rate, config.trials, report.radius, report.max_list_size
    ))
}

fn embedding_inequality() -> Outcome {
    let mut violations = 0;
    let mut equalities = 0;
    let mut bad_equalities = 0;
    for (k, p) in [2u32, 3, 5].into_iter().enumerate() {
        let mut rng = trial_rng(606, k as u64);
        let pairs = if k == 2 { 33_334 } else { 33_333 };
        for _ in 0..pairs {
            let n = rng.random_range(1..=8usize);
            let y: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..p as f64)).collect();
            let c: Vec<u32> = (0..n).map(|_| rng.random_range(0..p)).collect();
            let ty = TorusWord::new(p, &y).unwrap();
            let ry = ty.reliability();
            let rc = ReliabilityVector::indicator(p, &c);
            let lhs: f64 = ry.entries().iter().zip(rc.entries()).map(|(a, b)| (a - b).powi(2)).sum();
            let per: Vec<f64> = y
                .iter()
                .zip(&c)
                .map(|(&yi, &ci)| {
                    let d = (yi - ci as f64).abs();
                    d.min(p as f64 - d)
                })
                .collect();
            let rhs = 2.0 * per.iter().map(|d| d * d).sum::<f64>();
            if lhs > rhs + 1e-12 {
                violations += 1;
            }
            if (lhs - rhs).abs() <= 1e-12 {
                equalities += 1;
                if per.iter().any(|&d| d > 1.0 + 1e-12) {
                    bad_equalities += 1;
                }
            }
        }
    }
    check(violations == 0, || format!("{violations} violations"))?;
    check(bad_equalities == 0, || format!("{bad_equalities} equality cases outside the linear segment"))?;
    Ok(format!("100000 pairs, 0 violations, {equalities} equality cases all within |y - c| <= 1"))
}

fn kv_guarantee() -> Outcome {
    let field = Field::shared(5, 1).unwrap();
    let points = (0..4).map(|x| field.elem(x).unwrap()).collect();
    let code = RsCode::new(field.clone(), 2, points).map_err(|e| e.to_string())?;
    let s = 20.0;
    let tau = guarantee_threshold(&code, s).map_err(|e| e.to_string())?;
    let mut words = Vec::new();
    for a in 0..5 {
        for b in 0..5 {
            let m = Poly::from_coeffs(vec![field.elem(a).unwrap(), field.elem(b).unwrap()]);
            let w = code.encode(&m).unwrap();
            words.push(w.iter().map(|e| e.value()).collect::<Vec<u32>>());
        }
    }
    let mut rng = trial_rng(700, 0);
    let mut guaranteed = 0;
    let mut misses = 0;
    for t in 0..500 {
        let anchor = &words[rng.random_range(0..words.len())];
        let mix = if t % 5 == 0 { 0.0 } else { rng.random_range(0.0..1.0) };
        let mut entries = Vec::with_capacity(20);
        for &c in anchor {
            let raw: Vec<f64> = (0..5).map(|_| rng.random::<f64>().powi(2)).collect();
            let sum: f64 = raw.iter().sum();
            let mut block: Vec<f64> = raw.iter().map(|x| (1.0 - mix) * x / sum).collect();
            block[c as usize] += mix;
            let rest: f64 = block.iter().enumerate().filter(|&(i, _)| i != 0).map(|(_, x)| x).sum();
            block[0] = (1.0 - rest).max(0.0);
            entries.extend(block);
        }
        let pi = ReliabilityVector::new(5, entries).map_err(|e| e.to_string())?;
        let out = kv_decode(&code, &pi, s).map_err(|e| e.to_string())?;
        let listed: Vec<Vec<u32>> = out.entries.iter().map(|e| e.word.iter().map(|x| x.value()).collect()).collect();
        for w in &words {
            let ip: f64 = w.iter().enumerate().map(|(i, &c)| pi.get(i, c)).sum();
            if ip >= tau * pi.norm() {
                guaranteed += 1;
                if !listed.contains(w) {
                    misses += 1;
                }
            }
        }
    }
    check(misses == 0, || format!("{misses} guaranteed codewords missed"))?;
    check(guaranteed > 0, || "no instance had a guaranteed codeword".into())?;
    Ok(format!("500 reliability vectors, S = {s}, {guaranteed} guaranteed codewords, 0 misses"))
}

fn optimality_certificate() -> Outcome {
    let mut worst_dev: f64 = 0.0;
    let mut worst_kkt: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    for delta in [0.01, 0.05, 0.1, 0.2, 0.25] {
        let beta = beta_from_delta(delta).map_err(|e| e.to_string())?;
        for p in [2u32, 3, 5, 7] {
            let r = verify_optimality(delta, p).map_err(|e| format!("delta={delta} p={p}: {e}"))?;
            worst_dev = worst_dev.max(r.max_deviation);
            worst_kkt = worst_kkt.max(r.max_kkt_violation);
            let b = FrequencyVector::bracket(p, beta);
            worst_norm = worst_norm.max((b.norm_sq() - (1.0 - 2.0 * delta)).abs());
        }
    }
    check(worst_dev <= 1e-6, || format!("minimizer deviation {worst_dev:e}"))?;
    check(worst_kkt < 1e-12, || format!("KKT residual {worst_kkt:e}"))?;
    check(worst_norm <= 1e-12, || format!("<[b],[b]> off by {worst_norm:e}"))?;
    Ok(format!("20 grid points, max deviation {worst_dev:.1e}, max KKT residual {worst_kkt:.1e}"))
}

fn codimension_bound() -> Outcome {
    let mut parts = Vec::new();
    for r in [4u32, 6, 8] {
        let field = Field::shared(2, r).unwrap();
        let n = (1usize << r) - 1;
        for d in [2usize, 4, 16, 64] {
            if d > n {
                continue;
            }
            let code = BchCode::new(field.clone(), d).map_err(|e| e.to_string())?;
            let k = code.k();
            check(k == coset_dimension(r, d), || format!("q=2^{r} d={d}: k={k} disagrees with the coset count"))?;
            let bound = (d - 1).div_ceil(2) * r as usize;
            check(n - k <= bound, || format!("q=2^{r} d={d}: n-k={} > {bound}", n - k))?;
            if r == 4 && d == 4 {
                check(n - k == bound, || format!("expected equality at (16, 4), got {} < {bound}", n - k))?;
            }
            parts.push(format!("({},{d}):{}<={bound}", 1 << r, n - k));
        }
    }
    Ok(parts.join(" "))
}

fn hermite_reporting() -> Outcome {
    let lat = dense_lattice(256, 3).map_err(|e| e.to_string())?;
    let report = lat.hermite_report().map_err(|e| e.to_string())?;
    // det^3 <= q^{2 h^2} with h = 8, compared exactly
    let lhs = lat.det().pow(3);
    let rhs = BigUint::from(256u32).pow(2 * 64);
    check(lhs <= rhs, || "det exceeds q^{2h^2/3}".into())?;
    check(report.det_bound_holds, || "report disagrees with the exact comparison".into())?;
    let normalized = report.normalized.ok_or("no normalized distance")?;
    let bound = report.bound.ok_or("no sqrt(n / log n) reference")?;
    Ok(format!(
        "det = 2^{:.0} <= 256^(128/3) = 2^{:.1}, lambda1/det^(1/n) = {normalized:.4}, sqrt(n/log2 n) = {bound:.4}",
        report.log2_det, report.log2_det_bound
    ))
}

fn runtime_recurrence() -> Outcome {
    let lat = dense_lattice(64, 2).map_err(|e| e.to_string())?;
    let stack = DecoderStack::bch(lat, 0.25).map_err(|e| e.to_string())?;
    let n = stack.lattice().n();
    let r = stack.radius(2);
    // short lattice vectors w give midpoints v + w/2 inside the radius of
    // both v and v + w, which forces lists with several entries; they come
    // from sums of two basis rows reduced into (-2, 2] (4 Z^n lies in the
    // lattice), skipping the trivial 4 e_j
    let basis = stack.lattice().basis();
    let mut short: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        for j in i..n {
            let w: Vec<i64> = basis[i]
                .iter()
                .zip(&basis[j])
                .map(|(a, b)| {
                    let x = (a + b).rem_euclid(4);
                    if x > 2 { x - 4 } else { x }
                })
                .collect();
            let sq: i64 = w.iter().map(|x| x * x).sum();
            if sq > 0 && (sq as f64) < 4.0 * r * r && w.iter().filter(|&&x| x != 0).count() > 1 {
                assert!(stack.lattice().member(2, &w));
                short.push(w);
            }
        }
    }
    check(!short.is_empty(), || "no lattice vector shorter than twice the radius".into())?;
    let mut max_calls = [0u64; 3];
    let mut max_lists = [0u64; 3];
    let trials = 150u64;
    for t in 0..trials {
        let mut rng = trial_rng(11, t);
        let v = sample_lattice_vector(stack.lattice(), 2, &mut rng).map_err(|e| e.to_string())?;
        let e: Vec<f64> = match t % 3 {
            0 => sample_noise(n, r, &mut rng).map_err(|e| e.to_string())?,
            1 => {
                let mut e = vec![0.0; n];
                for _ in 0..5 {
                    let j = rng.random_range(0..n);
                    e[j] = if rng.random_bool(0.5) { 0.97 } else { -0.97 };
                }
                e
            }
            _ if (t / 3) % 2 == 0 => short[rng.random_range(0..short.len())].iter().map(|&x| x as f64 / 2.0).collect(),
            _ => {
                let mut e = vec![0.0; n];
                e[rng.random_range(0..n)] = 2.0;
                e
            }
        };
        let y: Vec<f64> = v.iter().zip(&e).map(|(&a, &b)| a as f64 + b).collect();
        let out = lattice_list_decode(&stack, &y, 2).map_err(|e| e.to_string())?;
        let a = &out.audit;
        check(a.consistent(2), || format!("trial {t}: audit {a:?} breaks the recursion tree"))?;
        // independent recount of the tree: D_2 once, D_1 once per level-2
        // codeword, D_0 once per level-1 codeword
        check(a.calls[2] == 1 && a.calls[1] == a.list_totals[2] && a.calls[0] == a.list_totals[1], || {
            format!("trial {t}: {a:?}")
        })?;
        check(a.calls[0] <= a.max_list_sizes[1] * a.max_list_sizes[2], || format!("trial {t}: D_0 over budget"))?;
        check(out.vectors.contains(&v), || format!("trial {t}: planted vector missing"))?;
        for i in 0..3 {
            max_calls[i] = max_calls[i].max(a.calls[i]);
            max_lists[i] = max_lists[i].max(a.max_list_sizes[i]);
        }
    }
    Ok(format!(
        "{trials} instrumented decodes ({} midpoint directions), max calls D0..D2 = {max_calls:?}, max list sizes L0..L2 = {max_lists:?}",
        short.len()
    ))
}

fn basis_dependence() -> Outcome {
    let tower = CodeTower::from_generators(3, 2, vec![vec![vec![1, 2]], vec![vec![1, 2]]]).map_err(|e| e.to_string())?;
    let alt = tower.clone().with_basis(vec![vec![2, 1], vec![0, 1]]).map_err(|e| e.to_string())?;
    let tower = tower.with_basis(vec![vec![1, 2], vec![0, 1]]).map_err(|e| e.to_string())?;
    let lat = ConstructionDLattice::new(tower).map_err(|e| e.to_string())?;
    let lat_alt = ConstructionDLattice::new(alt).map_err(|e| e.to_string())?;
    check(lat.member(2, &[2, 4]), || "(2,4) should lie in the first lattice".into())?;
    check(!lat.member(2, &[2, 1]), || "(2,1) should not lie in the first lattice".into())?;
    check(lat_alt.member(2, &[2, 1]), || "(2,1) should lie in the second lattice".into())?;
    Ok("(2,4) in L2, (2,1) not in L2, (2,1) in L2'".into())
}

fn main() -> ExitCode {
    let mut runner = Runner { failures: 0 };
    let min = |m: u64| Duration::from_secs(60 * m);
    runner.run(1, "determinant exactness", Duration::from_secs(30), determinant_exactness);
    runner.run(2, "minimum distance", min(5), minimum_distance);
    runner.run(3, "code-level oracle equivalence", min(10), code_oracle_equivalence);
    runner.run(4, "lattice-level oracle equivalence", min(15), lattice_oracle_equivalence);
    runner.run(5, "planted recovery at scale", min(30), planted_recovery);
    runner.run(6, "embedding inequality", min(1), embedding_inequality);
    runner.run(7, "soft-decision guarantee", min(10), kv_guarantee);
    runner.run(8, "optimality certificate", min(2), optimality_certificate);
    runner.run(9, "codimension bound", min(1), codimension_bound);
    runner.run(10, "Hermite reporting", min(1), hermite_reporting);
    runner.run(11, "runtime recurrence", min(5), runtime_recurrence);
    runner.run(12, "basis dependence", Duration::from_secs(1), basis_dependence);
    if runner.failures == 0 {
        println!("all 12 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{} of 12 criteria failed", runner.failures);
        ExitCode::FAILURE
    }
}
