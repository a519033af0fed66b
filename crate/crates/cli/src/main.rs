use std::fs;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use dlattice::harness::{
    dense_lattice, decode_received, optimality_sweep, oracle_compare, run_experiment, verify_lattice,
    ExperimentConfig, ReceivedWord,
};
use dlattice::LatticeDocument;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "dlattice", version, about = "Construction D lattices from BCH towers and their list decoder")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the lattice of the binary BCH tower with d_i = 4^i over F_q.
    BuildLattice {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List decode a received word.
    Decode {
        #[arg(long)]
        lattice: PathBuf,
        /// JSON file holding {"y": [...]} or a bare array.
        #[arg(long)]
        received: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Planted-vector recovery experiment.
    Experiment {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        trials: usize,
        #[arg(long = "noise-frac")]
        noise_frac: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        coeff_bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-trial wall time (makes the report nondeterministic).
        #[arg(long)]
        timing: bool,
    },
    /// Check the minimizer of the reliability objective and its KKT certificate.
    VerifyOptimality {
        #[arg(long)]
        p: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        deltas: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Determinant, basis norms, Hermite report and minimum-distance evidence.
    VerifyLattice {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the recursive decoder against exhaustive enumeration.
    OracleCompare {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        ell: usize,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.25,0.5")]
        epsilons: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct OptimalityEntry {
    delta: f64,
    p: u32,
    beta: f64,
    minimizer: Vec<f64>,
    max_kkt_violation: f64,
    objective_gap: f64,
}

#[derive(Serialize)]
struct OptimalityOutput {
    passed: bool,
    max_kkt_violation: f64,
    max_deviation: f64,
    reports: Vec<OptimalityEntry>,
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display())),
        None => match writeln!(std::io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        },
    }
}

fn load_lattice(path: &Path) -> Result<dlattice::ConstructionDLattice> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc = LatticeDocument::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(doc.to_lattice()?)
}

fn load_received(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if let Ok(word) = serde_json::from_str::<ReceivedWord>(&text) {
        return Ok(word.y);
    }
    serde_json::from_str::<Vec<f64>>(&text).with_context(|| format!("{} is neither {{\"y\": [...]}} nor an array", path.display()))
}

/// Ok(true) on success, Ok(false) when a verification fails.
fn run(command: Command) -> Result<bool> {
    match command {
        Command::BuildLattice { q, ell, out } => {
            let lat = dense_lattice(q, ell)?;
            emit(&LatticeDocument::from_lattice(&lat), out.as_deref())?;
            Ok(true)
        }
        Command::Decode { lattice, received, epsilon, out } => {
            let lat = load_lattice(&lattice)?;
            let y = load_received(&received)?;
            if y.len() != lat.n() {
                bail!("received word has length {}, lattice dimension is {}", y.len(), lat.n());
            }
            emit(&decode_received(&lat, &y, epsilon)?, out.as_deref())?;
            Ok(true)
        }
        Command::Experiment { q, ell, epsilon, trials, noise_frac, seed, coeff_bound, out, timing } => {
            let config = ExperimentConfig {
                q,
                ell,
                epsilon,
                trials,
                noise_fraction: noise_frac,
                seed,
                coeff_bound,
                output_path: out.as_ref().map(|p| p.display().to_string()),
            };
            let report = run_experiment(&config, timing)?;
            emit(&report, out.as_deref())?;
            eprintln!("success rate {} over {} trials", report.success_rate, trials);
            Ok(report.passed())
        }
        Command::VerifyOptimality { p, deltas, out } => {
            let sweep = optimality_sweep(p, &deltas)?;
            let output = OptimalityOutput {
                passed: sweep.passed(),
                max_kkt_violation: sweep.max_kkt_violation,
                max_deviation: sweep.max_deviation,
                reports: sweep
                    .reports
                    .iter()
                    .map(|r| OptimalityEntry {
                        delta: r.delta,
                        p: r.p,
                        beta: r.beta,
                        minimizer: r.minimizer.clone(),
                        max_kkt_violation: r.max_kkt_violation,
                        objective_gap: r.objective_gap,
                    })
                    .collect(),
            };
            emit(&output, out.as_deref())?;
            Ok(output.passed)
        }
        Command::VerifyLattice { lattice, samples, seed, out } => {
            let lat = load_lattice(&lattice)?;
            let report = verify_lattice(&lat, samples, seed)?;
            emit(&report, out.as_deref())?;
            Ok(report.passed())
        }
        Command::OracleCompare { q, ell, epsilons, trials, seed, out } => {
            let cmp = oracle_compare(q, ell, &epsilons, trials, seed)?;
            emit(&cmp, out.as_deref())?;
            eprintln!("{} targets, {} mismatches", cmp.trials.len(), cmp.mismatches);
            Ok(cmp.mismatches == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
