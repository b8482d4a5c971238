//! Command-line front end: parse state files, dispatch to the analytic,
//! bounds, solver, or volume paths, and emit JSON or CSV reports.
//!
//! State files are JSON.  Pure states carry a `vector` field, density
//! matrices a `matrix` field:
//!
//! ```json
//! {"dims": [2, 2], "vector": [[0.7071067811865476, 0.0], …]}
//! {"dims": [2, 2], "matrix": [[[0.5, 0.0], …], …]}
//! ```
//!
//! Exit codes: 0 on success, 2 on validation errors (unreadable input,
//! malformed state, unsupported shape), 3 when the stochastic solver finishes
//! without meeting its own convergence criterion (the report is still
//! written, flagged `"converged": false`).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::bounds::{
    combined_interval, diagonal_family_robustness, random_robustness_bounds, werner_robustness,
    DiagonalFamilyParams, RobustnessInterval, WernerParams,
};
use crate::eigen::hermitian_eigensystem;
use crate::error::{Error, Result};
use crate::mat::ComplexMatrix;
use crate::pure::{
    entropy_of_entanglement, optimal_pseudomixture, pure_random_robustness, pure_robustness,
    Pseudomixture,
};
use crate::schmidt::schmidt_decompose;
use crate::sep::is_separable_small;
use crate::solver::{absolute_robustness, random_robustness_numeric, SolverConfig};
use crate::state::{partial_trace, DensityMatrix, PartyStructure, PureState};
use crate::tol;
use crate::volume::{estimate_separable_fraction_with_flags, VolumeConfig};

/// Families are only claimed on an entrywise match within this tolerance;
/// near-misses fall through to the solver.
const FAMILY_MATCH_TOL: f64 = 1e-10;

/// Robustness of entanglement for small multipartite quantum states.
#[derive(Debug, Parser)]
#[command(name = "qrobust", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Append the numerical tolerance constants to the JSON report.
    #[arg(long, global = true)]
    pub tolerance_report: bool,

    /// Emit the report as JSON (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,

    /// Emit CSV instead of JSON.  Only the `volume` subcommand has a CSV
    /// form: `sample_index,separable` rows, one per draw.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Seed for the stochastic paths (solver restarts, volume sampling).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

/// What to run.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form analysis of a pure state: Schmidt coefficients, entropy
    /// of entanglement, robustness, and random robustness.
    Pure {
        /// Path to a pure-state JSON file.
        state: PathBuf,
    },
    /// Robustness of a density matrix: recognized families in closed form,
    /// the numerical solver for total dimension ≤ 6, bounds otherwise.
    Mixed {
        /// Path to a density-matrix JSON file.
        state: PathBuf,
        /// Computation path: closed form / solver / bounds.
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Iteration cap per solver restart.
        #[arg(long)]
        max_iters: Option<u64>,
        /// Number of independent solver restarts.
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Pseudomixture ρ = (1 + t)ρ⁺ − tρ⁻ with separable parts, written to a
    /// JSON file: the optimal construction for pure inputs, the solver
    /// witness for mixed ones.
    Pseudomixture {
        /// Path to a state JSON file (pure or mixed).
        state: PathBuf,
        /// Output path for the pseudomixture JSON.
        out: PathBuf,
    },
    /// Minimal weight of maximally mixed admixture that washes out the
    /// entanglement.
    RandomRobustness {
        /// Path to a state JSON file (pure or mixed).
        state: PathBuf,
    },
    /// Monte-Carlo estimate of the separable volume fraction.  With `--csv`,
    /// emits `sample_index,separable` rows instead of the JSON report.
    Volume {
        /// Comma-separated party dimensions, e.g. 2,2.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Number of Monte-Carlo draws.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Number of pre-partitioned worker streams.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Separability verdict with its numerical certificate.
    CheckSeparable {
        /// Path to a state JSON file (pure or mixed).
        state: PathBuf,
    },
}

/// Computation path for the `mixed` subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Deterministic bounds only; never invokes the stochastic solver.
    Bounds,
    /// Numerical solver (total dimension ≤ 6).
    Solve,
    /// Closed form when a family is recognized, else solver, else bounds.
    Auto,
}

/// Parses arguments, runs, and reports: the whole binary except process exit.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {failure}");
            2
        }
    }
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

/// The shared tolerance constants, attached to reports on request so
/// downstream comparisons are auditable.
#[derive(Serialize)]
struct Tolerances {
    hermiticity: f64,
    psd_min_eigenvalue: f64,
    trace: f64,
    norm: f64,
    schmidt_zero: f64,
    support_rank: f64,
    det_fast_path: f64,
}

impl Tolerances {
    fn attach(cli: &Cli) -> Option<Tolerances> {
        cli.tolerance_report.then_some(Tolerances {
            hermiticity: tol::HERMITICITY,
            psd_min_eigenvalue: tol::PSD_MIN_EIGENVALUE,
            trace: tol::TRACE,
            norm: tol::NORM,
            schmidt_zero: tol::SCHMIDT_ZERO,
            support_rank: tol::SUPPORT_RANK,
            det_fast_path: tol::DET_FAST_PATH,
        })
    }
}

#[derive(Serialize)]
struct PureReport {
    dims: Vec<usize>,
    schmidt_coefficients: Vec<f64>,
    entropy_of_entanglement: f64,
    robustness: f64,
    random_robustness: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerances: Option<Tolerances>,
}

#[derive(Serialize)]
struct MixedReport {
    dims: Vec<usize>,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    restart_spread: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interval: Option<RobustnessInterval>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerances: Option<Tolerances>,
}

#[derive(Serialize)]
struct PseudomixtureReport {
    dims: Vec<usize>,
    weight: f64,
    out: String,
    reconstruction_defect: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerances: Option<Tolerances>,
}

#[derive(Serialize)]
struct RandomRobustnessReport {
    dims: Vec<usize>,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    interval: Option<RobustnessInterval>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerances: Option<Tolerances>,
}

#[derive(Serialize)]
struct SeparabilityReport {
    dims: Vec<usize>,
    separable: bool,
    min_partial_transpose_eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    determinant: Option<f64>,
    tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerances: Option<Tolerances>,
}

#[derive(Serialize)]
struct VolumeCliReport {
    dims: Vec<usize>,
    seed: u64,
    workers: usize,
    #[serde(flatten)]
    report: crate::volume::VolumeReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerances: Option<Tolerances>,
}

fn emit<T: Serialize>(out: &mut dyn Write, report: &T) -> Result<()> {
    let mut line = serde_json::to_string(report)?;
    line.push('\n');
    out.write_all(line.as_bytes())?;
    Ok(())
}

// ---------------------------------------------------------------------------
// State files.
// ---------------------------------------------------------------------------

enum LoadedState {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl LoadedState {
    /// Density-matrix view: projectors for pure states, identity for mixed.
    fn density(&self) -> Result<DensityMatrix> {
        match self {
            LoadedState::Pure(psi) => DensityMatrix::new(
                psi.structure().clone(),
                ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()),
            ),
            LoadedState::Mixed(rho) => Ok(rho.clone()),
        }
    }
}

fn load_state(path: &Path) -> Result<LoadedState> {
    let text = fs::read_to_string(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("vector").is_some() {
        Ok(LoadedState::Pure(serde_json::from_value(value)?))
    } else if value.get("matrix").is_some() {
        Ok(LoadedState::Mixed(serde_json::from_value(value)?))
    } else {
        Err(Error::InvalidParameter(format!(
            "{} has neither a \"vector\" nor a \"matrix\" field",
            path.display()
        )))
    }
}

fn load_pure(path: &Path) -> Result<PureState> {
    match load_state(path)? {
        LoadedState::Pure(psi) => Ok(psi),
        LoadedState::Mixed(_) => Err(Error::InvalidParameter(format!(
            "{} holds a density matrix; this subcommand needs a pure-state \"vector\" file",
            path.display()
        ))),
    }
}

// ---------------------------------------------------------------------------
// Family recognition.
// ---------------------------------------------------------------------------

fn max_entry_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Matches F·|ψ⟩⟨ψ| + (1 − F)(I − |ψ⟩⟨ψ|)/3 with ψ maximally entangled, in
/// any local basis: the spectrum must be {F, r, r, r} and the top eigenvector
/// must have Schmidt coefficients (1/√2, 1/√2).  Returns the robustness
/// max(0, 2F − 1).
fn werner_match(rho: &DensityMatrix) -> Option<f64> {
    let eig = hermitian_eigensystem(rho.matrix()).ok()?;
    let f = eig.values[3];
    let rest = (1.0 - f) / 3.0;
    if eig.values[..3].iter().any(|&v| (v - rest).abs() > FAMILY_MATCH_TOL) {
        return None;
    }
    let psi = PureState::normalized(rho.structure().clone(), eig.vector(3)).ok()?;
    let schmidt = schmidt_decompose(&psi).ok()?;
    if schmidt.rank() != 2
        || (schmidt.largest() - std::f64::consts::FRAC_1_SQRT_2).abs() > FAMILY_MATCH_TOL
    {
        return None;
    }
    // Safety net: rebuild the state from (F, ψ) and compare entrywise.
    let mut rebuilt = ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()).scale(f - rest);
    rebuilt.add_scaled(&ComplexMatrix::identity(4), rest);
    if max_entry_distance(&rebuilt, rho.matrix()) > FAMILY_MATCH_TOL {
        return None;
    }
    let params = WernerParams::new(f.clamp(0.25, 1.0)).ok()?;
    Some(werner_robustness(&params))
}

/// Matches p·diag(q₁, q₂/2, q₂/2, q₃) + (1 − p)|θ⟩⟨θ| with
/// |θ⟩ = cos θ|00⟩ + sin θ|11⟩ in the basis the matrix is written in.
///
/// The split between diagonal weight and pure part is not unique; the corner
/// entry and the (1,1) entry fix the robustness regardless, so any valid
/// parameter set that reconstructs the matrix is returned.
fn diagonal_family_from_matrix(rho: &DensityMatrix) -> Option<(DiagonalFamilyParams, f64)> {
    let m = rho.matrix();
    for i in 0..4 {
        for j in 0..4 {
            let x_shaped = i == j || (i == 0 && j == 3) || (i == 3 && j == 0);
            if !x_shaped && m[(i, j)].norm() > FAMILY_MATCH_TOL {
                return None;
            }
        }
    }
    let corner = m[(0, 3)];
    if corner.im.abs() > FAMILY_MATCH_TOL || corner.re < -FAMILY_MATCH_TOL {
        return None;
    }
    let (d0, d1, d2, d3) = (m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re, m[(3, 3)].re);
    if (d1 - d2).abs() > FAMILY_MATCH_TOL {
        return None;
    }
    let corner = corner.re.max(0.0);

    let params = if corner <= FAMILY_MATCH_TOL {
        // Purely diagonal: p = 1 and the diagonal is p·q directly.
        let total = d0 + d1 + d2 + d3;
        DiagonalFamilyParams::new(1.0, [d0 / total, (d1 + d2) / total, d3 / total], 0.0).ok()?
    } else {
        // Give the pure part all the weight the corner allows:
        // (1 − p)cos²θ = d0, so tan θ = corner/d0 (≤ 1 requires corner ≤ d0,
        // which holds whenever the matrix is ordered with d0 ≥ d3).
        if corner > d0 + FAMILY_MATCH_TOL {
            return None;
        }
        let theta = (corner / d0).min(1.0).atan();
        let s = ((corner * corner) / d0).min(d3);
        let p = ((d1 + d2) + (d3 - s)).clamp(0.0, 1.0);
        if p <= 1e-12 {
            DiagonalFamilyParams::new(0.0, [0.25, 0.5, 0.25], theta).ok()?
        } else {
            let q2 = ((d1 + d2) / p).clamp(0.0, 1.0);
            let q3 = ((d3 - s) / p).clamp(0.0, 1.0 - q2);
            DiagonalFamilyParams::new(p, [1.0 - q2 - q3, q2, q3], theta).ok()?
        }
    };
    if max_entry_distance(params.state().matrix(), m) > FAMILY_MATCH_TOL {
        return None;
    }
    Some((params, diagonal_family_robustness(&params)))
}

/// Canonicalizing local rotation: conjugate by the eigenbases of the reduced
/// states (descending eigenvalues), make the (0,3) corner real nonnegative
/// with a local phase, and order the diagonal so that ρ₀₀ ≥ ρ₃₃ with a
/// simultaneous bit flip.  Robustness is invariant under all three moves.
fn canonicalized(rho: &DensityMatrix) -> Option<DensityMatrix> {
    let reduced_a = partial_trace(rho, &[0]).ok()?;
    let reduced_b = partial_trace(rho, &[1]).ok()?;
    let ea = hermitian_eigensystem(reduced_a.matrix()).ok()?;
    let eb = hermitian_eigensystem(reduced_b.matrix()).ok()?;
    let ua = ComplexMatrix::from_fn(2, 2, |i, k| ea.vector(1 - k)[i]);
    let ub = ComplexMatrix::from_fn(2, 2, |i, k| eb.vector(1 - k)[i]);
    let u = ua.kron(&ub);
    let mut rot = u.adjoint().matmul(rho.matrix()).matmul(&u);

    let corner = rot[(0, 3)];
    if corner.norm() > 0.0 {
        // Conjugate by I ⊗ diag(1, e^{iα}) with e^{iα} = corner*/|corner|:
        // entry (i, j) picks up conj(d_i)·d_j.
        let phase = corner.conj() / corner.norm();
        let d = |k: usize| if k % 2 == 1 { phase } else { Complex64::new(1.0, 0.0) };
        for i in 0..4 {
            for j in 0..4 {
                let factor = d(i).conj() * d(j);
                rot[(i, j)] *= factor;
            }
        }
    }
    if rot[(0, 0)].re < rot[(3, 3)].re {
        rot = ComplexMatrix::from_fn(4, 4, |i, j| rot[(3 - i, 3 - j)]);
    }
    DensityMatrix::new(rho.structure().clone(), rot).ok()
}

/// Exact-match family recognition for two-qubit states, in any local basis.
fn recognize_family(rho: &DensityMatrix) -> Option<(&'static str, f64)> {
    if !rho.structure().is_bipartite() || rho.dim() != 4 {
        return None;
    }
    if let Some(value) = werner_match(rho) {
        return Some(("werner", value));
    }
    if let Some((_, value)) = diagonal_family_from_matrix(rho) {
        return Some(("diagonal", value));
    }
    if let Some(canonical) = canonicalized(rho) {
        if let Some((_, value)) = diagonal_family_from_matrix(&canonical) {
            return Some(("diagonal", value));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Dispatch.
// ---------------------------------------------------------------------------

fn solver_config(cli: &Cli, max_iters: Option<u64>, restarts: Option<usize>) -> SolverConfig {
    let mut cfg = SolverConfig {
        seed: cli.seed,
        ..SolverConfig::default()
    };
    if let Some(iters) = max_iters {
        cfg.max_iters = iters;
    }
    if let Some(r) = restarts {
        cfg.restarts = r;
    }
    cfg
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    if cli.csv && !matches!(cli.command, Command::Volume { .. }) {
        return Err(Error::InvalidParameter(
            "CSV output is only available for the volume subcommand".into(),
        ));
    }
    match &cli.command {
        Command::Pure { state } => {
            let psi = load_pure(state)?;
            let schmidt = schmidt_decompose(&psi)?;
            let report = PureReport {
                dims: psi.structure().dims().to_vec(),
                schmidt_coefficients: schmidt.coefficients().to_vec(),
                entropy_of_entanglement: entropy_of_entanglement(&psi)?,
                robustness: pure_robustness(&psi)?,
                random_robustness: pure_random_robustness(&psi)?,
                tolerances: Tolerances::attach(cli),
            };
            emit(out, &report)?;
            Ok(0)
        }

        Command::Mixed { state, method, max_iters, restarts } => {
            let rho = match load_state(state)? {
                LoadedState::Mixed(rho) => rho,
                LoadedState::Pure(_) => {
                    return Err(Error::InvalidParameter(format!(
                        "{} holds a pure state; use the `pure` subcommand or a \"matrix\" file",
                        state.display()
                    )))
                }
            };
            let dims = rho.structure().dims().to_vec();
            let tolerances = Tolerances::attach(cli);
            match method {
                Method::Bounds => {
                    let interval = combined_interval(&rho)?;
                    emit(out, &MixedReport {
                        dims,
                        method: "bounds",
                        family: None,
                        value: None,
                        converged: None,
                        iterations: None,
                        restart_spread: None,
                        interval: Some(interval),
                        tolerances,
                    })?;
                    Ok(0)
                }
                Method::Solve => {
                    let result = absolute_robustness(&rho, &solver_config(cli, *max_iters, *restarts))?;
                    let code = if result.converged { 0 } else { 3 };
                    emit(out, &MixedReport {
                        dims,
                        method: "solver",
                        family: None,
                        value: Some(result.value),
                        converged: Some(result.converged),
                        iterations: Some(result.iterations),
                        restart_spread: Some(result.restart_spread),
                        interval: None,
                        tolerances,
                    })?;
                    Ok(code)
                }
                Method::Auto => {
                    if let Some((family, value)) = recognize_family(&rho) {
                        emit(out, &MixedReport {
                            dims,
                            method: "closed-form",
                            family: Some(family),
                            value: Some(value),
                            converged: None,
                            iterations: None,
                            restart_spread: None,
                            interval: None,
                            tolerances,
                        })?;
                        return Ok(0);
                    }
                    if rho.structure().is_bipartite() && rho.dim() <= 6 {
                        let result =
                            absolute_robustness(&rho, &solver_config(cli, *max_iters, *restarts))?;
                        let code = if result.converged { 0 } else { 3 };
                        emit(out, &MixedReport {
                            dims,
                            method: "solver",
                            family: None,
                            value: Some(result.value),
                            converged: Some(result.converged),
                            iterations: Some(result.iterations),
                            restart_spread: Some(result.restart_spread),
                            interval: None,
                            tolerances,
                        })?;
                        Ok(code)
                    } else {
                        let interval = combined_interval(&rho)?;
                        emit(out, &MixedReport {
                            dims,
                            method: "bounds",
                            family: None,
                            value: None,
                            converged: None,
                            iterations: None,
                            restart_spread: None,
                            interval: Some(interval),
                            tolerances,
                        })?;
                        Ok(0)
                    }
                }
            }
        }

        Command::Pseudomixture { state, out: out_path } => {
            let loaded = load_state(state)?;
            let rho = loaded.density()?;
            let (pm, converged): (Pseudomixture, Option<bool>) = match &loaded {
                LoadedState::Pure(psi) => (optimal_pseudomixture(psi)?, None),
                LoadedState::Mixed(rho) => {
                    let result = absolute_robustness(rho, &solver_config(cli, None, None))?;
                    let converged = result.converged;
                    (result.pseudomixture, Some(converged))
                }
            };
            let mut text = serde_json::to_string_pretty(&pm)?;
            text.push('\n');
            fs::write(out_path, text)?;
            let report = PseudomixtureReport {
                dims: rho.structure().dims().to_vec(),
                weight: pm.t,
                out: out_path.display().to_string(),
                reconstruction_defect: pm.reconstruction_defect(&rho),
                converged,
                tolerances: Tolerances::attach(cli),
            };
            emit(out, &report)?;
            Ok(if converged == Some(false) { 3 } else { 0 })
        }

        Command::RandomRobustness { state } => {
            let loaded = load_state(state)?;
            let tolerances = Tolerances::attach(cli);
            let report = match &loaded {
                LoadedState::Pure(psi) => RandomRobustnessReport {
                    dims: psi.structure().dims().to_vec(),
                    method: "closed-form",
                    value: Some(pure_random_robustness(psi)?),
                    interval: None,
                    tolerances,
                },
                LoadedState::Mixed(rho) => {
                    let dims = rho.structure().dims().to_vec();
                    if rho.structure().is_bipartite() && rho.dim() <= 6 {
                        RandomRobustnessReport {
                            dims,
                            method: "numeric",
                            value: Some(random_robustness_numeric(rho)?),
                            interval: None,
                            tolerances,
                        }
                    } else {
                        RandomRobustnessReport {
                            dims,
                            method: "bounds",
                            value: None,
                            interval: Some(random_robustness_bounds(rho)?),
                            tolerances,
                        }
                    }
                }
            };
            emit(out, &report)?;
            Ok(0)
        }

        Command::Volume { dims, samples, workers } => {
            let structure = PartyStructure::new(dims.clone())?;
            let cfg = VolumeConfig {
                structure,
                samples: *samples,
                seed: cli.seed,
                workers: *workers,
                require_exact: false,
            };
            let (report, flags) = estimate_separable_fraction_with_flags(&cfg)?;
            if cli.csv {
                out.write_all(b"sample_index,separable\n")?;
                for (index, flag) in flags.iter().enumerate() {
                    writeln!(out, "{index},{flag}")?;
                }
            } else {
                emit(out, &VolumeCliReport {
                    dims: dims.clone(),
                    seed: cli.seed,
                    workers: *workers,
                    report,
                    tolerances: Tolerances::attach(cli),
                })?;
            }
            Ok(0)
        }

        Command::CheckSeparable { state } => {
            let rho = load_state(state)?.density()?;
            let verdict = is_separable_small(&rho)?;
            let report = SeparabilityReport {
                dims: rho.structure().dims().to_vec(),
                separable: verdict.separable,
                min_partial_transpose_eigenvalue: verdict.min_eigenvalue,
                determinant: verdict.determinant,
                tolerance: verdict.tolerance,
                tolerances: Tolerances::attach(cli),
            };
            emit(out, &report)?;
            Ok(0)
        }
    }
}
