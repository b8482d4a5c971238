//! Numerical robustness for 2×2 and 2×3 mixed states.
//!
//! At total dimension n ≤ 6 a state is separable exactly when its partial
//! transpose is positive semidefinite, which turns robustness into a convex
//! program: minimize the trace of a Hermitian matrix X = s·ρ⁻ subject to
//!
//! * c1: X ⪰ 0,
//! * c2: X^(T_B) ⪰ 0  (so X/s is separable),
//! * c3: (ρ + X)^(T_B) ⪰ 0  (so the mixture (ρ + X)/(1 + s) is separable).
//!
//! The minimum of Tr X is the robustness R(ρ).  [`absolute_robustness`]
//! solves this with a conditional random walk (any local minimum is global,
//! so restarts only guard the stochastic search), while
//! [`relative_robustness`] fixes the noise state σ and finds the minimal
//! admixture weight by eigenvalue analysis or bisection.

use std::sync::atomic::{AtomicU64, Ordering};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{hermitian_eigensystem, hermitian_eigenvalues};
use crate::error::{Error, Result};
use crate::mat::{psd_with_shift, ComplexMatrix};
use crate::pure::Pseudomixture;
use crate::sep::is_separable_small;
use crate::state::{partial_trace, partial_transpose, pt_second_party, DensityMatrix, PartyStructure};

/// Counts how many stochastic solves have run in this process, so callers
/// can verify that cheap code paths never fall back to the walk.
static WALK_INVOCATIONS: AtomicU64 = AtomicU64::new(0);

/// Number of stochastic solves ([`absolute_robustness`] calls) so far in
/// this process.
pub fn walk_invocation_count() -> u64 {
    WALK_INVOCATIONS.load(Ordering::Relaxed)
}

/// Parameters of the stochastic trace-minimization walk.
///
/// The defaults favor accuracy over speed; shrink `restarts` and `max_iters`
/// for bulk surveys.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Seed for the walk's pseudo-randomness.  Identical configs produce
    /// identical results.
    pub seed: u64,
    /// Number of independent walks; the best result wins and the spread
    /// across walks feeds the convergence check.
    pub restarts: usize,
    /// Initial step size, as a fraction of the current trace.
    pub initial_step: f64,
    /// Step-size multiplier applied after too many consecutive rejections.
    pub step_shrink: f64,
    /// Walk stops once the step fraction falls below this.
    pub min_step: f64,
    /// Hard iteration cap per restart.
    pub max_iters: u64,
    /// Restart values must agree within this for `converged` to be set.
    pub agreement_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 4,
            initial_step: 0.1,
            step_shrink: 0.5,
            min_step: 1e-7,
            max_iters: 200_000,
            agreement_tol: 1e-3,
        }
    }
}

impl SolverConfig {
    /// Checks that every knob is in its valid range.
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(Error::InvalidParameter(
                "restarts and max_iters must be positive".into(),
            ));
        }
        if !(self.initial_step > 0.0 && self.min_step > 0.0) {
            return Err(Error::InvalidParameter(
                "step sizes must be positive".into(),
            ));
        }
        if !(self.step_shrink > 0.0 && self.step_shrink < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "step_shrink must lie strictly between 0 and 1, got {}",
                self.step_shrink
            )));
        }
        // Negated form so a NaN tolerance is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.agreement_tol > 0.0) {
            return Err(Error::InvalidParameter(
                "agreement_tol must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of a stochastic robustness solve.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SolverResult {
    /// The minimized weight s (the robustness estimate).
    pub value: f64,
    /// Whether the restarts agreed within tolerance and none hit the
    /// iteration cap.  The result is still usable when false — it is an
    /// upper bound either way.
    pub converged: bool,
    /// Total proposals examined, summed over restarts.
    pub iterations: u64,
    /// Max − min of the restart values.
    pub restart_spread: f64,
    /// The witnessing decomposition ρ = (1+s)·ρ⁺ − s·ρ⁻ with both parts
    /// separable.
    pub pseudomixture: Pseudomixture,
}

/// Shift added to diagonals before Cholesky so that eigenvalues down to
/// −shift still count as positive semidefinite; scaled by the matrix size.
const PSD_SLACK: f64 = 1e-12;

/// Acceptance threshold for determinant-based partial-transpose checks,
/// scaled by trace⁴ to stay unit-consistent.
const DET_SLACK: f64 = 1e-12;

/// Minimum trace decrease for a walk proposal to be accepted; prevents
/// cycling on numerically flat regions.
const MIN_DECREASE: f64 = 1e-12;

/// Consecutive rejections before the step size shrinks.
const SHRINK_AFTER: u32 = 100;

fn check_small_bipartite(rho: &DensityMatrix) -> Result<()> {
    let structure = rho.structure();
    if !structure.is_bipartite() {
        return Err(Error::UnsupportedDimension(format!(
            "the solver handles exactly two parties, got {} parties",
            structure.party_count()
        )));
    }
    if rho.dim() > 6 {
        return Err(Error::UnsupportedDimension(format!(
            "positivity of the partial transpose certifies separability only up to \
             total dimension 6, got {:?}",
            structure.dims()
        )));
    }
    Ok(())
}

/// Minimal weight s ≥ 0 such that (ρ + s·σ)/(1 + s) is separable, for a
/// fixed separable reference σ.
///
/// When σ^(T_B) is positive definite the answer is an eigenvalue problem;
/// otherwise the PSD frontier is bisected.  The returned s is certified:
/// the mixture passes the separability check at s and fails just below it.
pub fn relative_robustness(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_small_bipartite(rho)?;
    if rho.structure() != sigma.structure() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            actual: sigma.dim(),
        });
    }
    let verdict = is_separable_small(sigma)?;
    if !verdict.separable {
        return Err(Error::NotSeparableReference {
            min_eigenvalue: verdict.min_eigenvalue,
        });
    }

    let n = rho.dim();
    let rho_pt = partial_transpose(rho, 1)?;
    let sigma_pt = partial_transpose(sigma, 1)?;

    if hermitian_eigenvalues(&rho_pt)?[0] >= 0.0 {
        return Ok(0.0);
    }

    let mut scratch = Vec::new();
    let feasible = |s: f64, scratch: &mut Vec<Complex64>| -> bool {
        let mut m = rho_pt.clone();
        m.add_scaled(&sigma_pt, s);
        psd_with_shift(m.entries(), n, PSD_SLACK * (1.0 + s), scratch)
    };

    let sigma_eig = hermitian_eigensystem(&sigma_pt)?;
    let mut s = if sigma_eig.values[0] > 1e-10 {
        // σ^(T_B) = T ≻ 0: the minimal s is the largest eigenvalue of
        // −T^(−1/2)·ρ^(T_B)·T^(−1/2).
        let mut inv_sqrt = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let v = sigma_eig.vector(k);
            inv_sqrt.add_scaled(&ComplexMatrix::outer(&v, &v), 1.0 / sigma_eig.values[k].sqrt());
        }
        let m = inv_sqrt.matmul(&rho_pt).matmul(&inv_sqrt);
        (-hermitian_eigenvalues(&m)?[0]).max(0.0)
    } else {
        // Bracket the PSD frontier, then bisect.  Partial-transpose
        // eigenvalues of a state never drop below −1/2 and the kernel gate
        // above is 1e−10, so any feasible weight is far below 1e10; failing
        // there means σ^(T_B) has no weight on a needed direction.
        let mut hi = n as f64 / 2.0;
        while !feasible(hi, &mut scratch) {
            hi *= 2.0;
            if hi > 1e10 {
                return Err(Error::InfeasibleReference);
            }
        }
        let mut lo = 0.0;
        while hi - lo > 1e-10 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if feasible(mid, &mut scratch) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };

    // Certify: feasible at s (nudging up over roundoff if needed)…
    let mut tries = 0;
    while !feasible(s, &mut scratch) {
        s += 1e-14 * (1.0 + s);
        tries += 1;
        if tries > 1000 {
            return Err(Error::InfeasibleReference);
        }
    }
    // …and infeasible just below; otherwise tighten.
    if s > 1e-8 && feasible(s - 1e-8, &mut scratch) {
        let (mut lo, mut hi) = (0.0, s);
        while hi - lo > 1e-10 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if feasible(mid, &mut scratch) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        s = hi;
    }
    Ok(s)
}

/// Robustness relative to maximally mixed noise, R(ρ ‖ I/n).
///
/// Equals n·|min(λ_min, 0)| with λ_min the smallest eigenvalue of ρ^(T_B),
/// because the maximally mixed reference turns the frontier condition into a
/// plain eigenvalue shift.
pub fn random_robustness_numeric(rho: &DensityMatrix) -> Result<f64> {
    let noise = DensityMatrix::maximally_mixed(rho.structure().clone());
    relative_robustness(rho, &noise)
}

/// Scratch buffers reused across all proposals of one walk.
struct WalkBuffers {
    /// Current accepted X.
    x: Vec<Complex64>,
    /// Partial transpose of the current X.
    x_pt: Vec<Complex64>,
    /// Proposal.
    cand: Vec<Complex64>,
    /// Partial transpose of the proposal.
    cand_pt: Vec<Complex64>,
    /// Random Hermitian direction.
    dir: Vec<Complex64>,
    /// ρ^(T_B) + candidate^(T_B).
    sum_pt: Vec<Complex64>,
    /// Cholesky / determinant workspace.
    scratch: Vec<Complex64>,
}

impl WalkBuffers {
    fn new(n: usize) -> Self {
        let zeros = vec![Complex64::new(0.0, 0.0); n * n];
        Self {
            x: zeros.clone(),
            x_pt: zeros.clone(),
            cand: zeros.clone(),
            cand_pt: zeros.clone(),
            dir: zeros.clone(),
            sum_pt: zeros,
            scratch: Vec::new(),
        }
    }
}

/// Fills `dir` with a Frobenius-normalized random Hermitian matrix and
/// returns its trace.  With `traceless` the trace component is projected out
/// first, which suits search stages that handle the radial direction exactly.
fn sample_direction(dir: &mut [Complex64], n: usize, traceless: bool, rng: &mut ChaCha8Rng) -> f64 {
    for i in 0..n {
        let d: f64 = rng.sample(StandardNormal);
        dir[i * n + i] = Complex64::new(d, 0.0);
        for j in (i + 1)..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            dir[i * n + j] = Complex64::new(re, im);
            dir[j * n + i] = Complex64::new(re, -im);
        }
    }
    if traceless {
        let mean = (0..n).map(|i| dir[i * n + i].re).sum::<f64>() / n as f64;
        for i in 0..n {
            dir[i * n + i].re -= mean;
        }
    }
    let norm = dir.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
    let mut trace = 0.0;
    for (k, entry) in dir.iter_mut().enumerate() {
        *entry /= norm;
        if k % (n + 1) == 0 {
            trace += entry.re;
        }
    }
    trace
}

/// Fills `dir` with a traceless, Frobenius-normalized "bump-drain"
/// direction: a rank-one bump at a random vector minus a uniform drain.
/// Adding it moves weight from everywhere toward span{v} — the rebalancing
/// move a rank-deficient optimum demands, which an isotropic dense
/// direction almost never approximates in higher dimensions.
fn sample_bump_direction(dir: &mut [Complex64], n: usize, rng: &mut ChaCha8Rng) {
    let mut v = [Complex64::new(0.0, 0.0); 8];
    let mut norm_sqr = 0.0;
    for entry in v.iter_mut().take(n) {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        *entry = Complex64::new(re, im);
        norm_sqr += entry.norm_sqr();
    }
    let inv = 1.0 / norm_sqr.max(1e-300);
    let drain = 1.0 / n as f64;
    for i in 0..n {
        for j in 0..n {
            dir[i * n + j] = v[i] * v[j].conj() * inv;
        }
        dir[i * n + i] -= drain;
    }
    let norm = dir.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
    for entry in dir.iter_mut() {
        *entry /= norm;
    }
}

fn trace_of(entries: &[Complex64], n: usize) -> f64 {
    (0..n).map(|i| entries[i * n + i].re).sum()
}

/// Checks c1/c2/c3 for a candidate X with trace `s`.
///
/// c1 always goes through Cholesky.  For n = 4, once c1 holds the candidate
/// is a scaled two-qubit state, whose partial transpose has at most one
/// negative eigenvalue — so the sign of the determinant decides c2, and the
/// same argument applied to ρ + X decides c3.  Other dimensions use
/// Cholesky throughout.
#[allow(clippy::too_many_arguments)]
fn constraints_hold(
    n: usize,
    n1: usize,
    n2: usize,
    det_ok: bool,
    rho_pt: &[Complex64],
    cand: &[Complex64],
    cand_pt: &mut [Complex64],
    sum_pt: &mut [Complex64],
    scratch: &mut Vec<Complex64>,
    s: f64,
) -> bool {
    // c1: X ⪰ 0.
    if !psd_with_shift(cand, n, PSD_SLACK * (s + 1e-300), scratch) {
        return false;
    }
    pt_second_party(cand, n1, n2, cand_pt);
    // c2: X^(T_B) ⪰ 0.
    if det_ok {
        scratch.clear();
        scratch.extend_from_slice(cand_pt);
        let det = crate::mat::det_in_place(scratch, n).re;
        if det < -DET_SLACK * s.powi(4) {
            return false;
        }
    } else if !psd_with_shift(cand_pt, n, PSD_SLACK * (s + 1e-300), scratch) {
        return false;
    }
    // c3: (ρ + X)^(T_B) ⪰ 0.
    for (out, (a, b)) in sum_pt.iter_mut().zip(rho_pt.iter().zip(cand_pt.iter())) {
        *out = a + b;
    }
    if det_ok {
        scratch.clear();
        scratch.extend_from_slice(sum_pt);
        let det = crate::mat::det_in_place(scratch, n).re;
        det >= -DET_SLACK * (1.0 + s).powi(4)
    } else {
        psd_with_shift(sum_pt, n, PSD_SLACK * (1.0 + s), scratch)
    }
}

/// Replaces `entries` with its projection onto the positive-semidefinite
/// cone (negative eigenvalues clamped to zero).  Returns false when the
/// eigensolve fails, which callers treat as a rejected proposal.
fn project_psd(entries: &mut [Complex64], n: usize, work: &mut ComplexMatrix) -> bool {
    work.entries_mut().copy_from_slice(entries);
    let eig = match hermitian_eigensystem(work) {
        Ok(eig) => eig,
        Err(_) => return false,
    };
    entries.fill(Complex64::new(0.0, 0.0));
    for k in 0..n {
        if eig.values[k] <= 0.0 {
            continue;
        }
        let v = eig.vector(k);
        for i in 0..n {
            let vi = v[i] * eig.values[k];
            for j in 0..n {
                entries[i * n + j] += vi * v[j].conj();
            }
        }
    }
    true
}

/// Scales X down along the ray toward zero as far as c3 allows (c1 and c2
/// scale with X, so only c3 binds) and returns the new trace.  Exact up to
/// the bisection width.
fn ray_polish(
    n: usize,
    rho_pt: &[Complex64],
    x: &mut [Complex64],
    x_pt: &mut [Complex64],
    sum_pt: &mut [Complex64],
    scratch: &mut Vec<Complex64>,
    width: f64,
) -> f64 {
    let feasible = |beta: f64, sum_pt: &mut [Complex64], scratch: &mut Vec<Complex64>| -> bool {
        for (out, (a, b)) in sum_pt.iter_mut().zip(rho_pt.iter().zip(x_pt.iter())) {
            *out = a + beta * b;
        }
        psd_with_shift(sum_pt, n, PSD_SLACK, scratch)
    };
    let beta = if feasible(0.0, sum_pt, scratch) {
        0.0
    } else {
        let (mut lo, mut hi) = (0.0, 1.0);
        while hi - lo > width {
            let mid = 0.5 * (lo + hi);
            if feasible(mid, sum_pt, scratch) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    if beta < 1.0 {
        for (entry, pt_entry) in x.iter_mut().zip(x_pt.iter_mut()) {
            *entry *= beta;
            *pt_entry *= beta;
        }
    }
    trace_of(x, n)
}

/// Coordinate system for one eigenvalue-descent sweep.  The three matrices
/// X, X^(T_B), and ρ^(T_B) + X^(T_B) are linear images of each other, but
/// their eigenbases differ, so a projector step that is blocked in one
/// system is often open in another.
#[derive(Clone, Copy, PartialEq)]
enum DescentBasis {
    /// Shrink eigenvalues of X itself (keeps c1 automatically).
    Primal,
    /// Shrink eigenvalues of X^(T_B) (keeps c2 automatically).
    Transposed,
    /// Shrink eigenvalues of ρ^(T_B) + X^(T_B) (keeps c3 automatically).
    Slack,
}

/// Deterministic cleanup pass: diagonalizes the matrix selected by `basis`
/// and shrinks each of its eigenvalues as far as the remaining constraints
/// allow.  Random proposals leave weight in directions the optimum does not
/// need — especially in higher dimensions, where an isotropic step almost
/// never points down the thin feasible descent cone at a rank-deficient
/// optimum.  Every accepted shrink lowers Tr X by exactly δ, so the pass can
/// only improve the objective.  Sweeps repeat in the same eigenbasis until
/// one stops paying; rotating across the three bases and the random walk
/// supply the basis changes.
#[allow(clippy::too_many_arguments)]
fn eigenvalue_descent(
    n: usize,
    n1: usize,
    n2: usize,
    det_ok: bool,
    rho_pt: &[Complex64],
    x: &mut [Complex64],
    x_pt: &mut [Complex64],
    sum_pt: &mut [Complex64],
    scratch: &mut Vec<Complex64>,
    work: &mut ComplexMatrix,
    basis: DescentBasis,
) -> f64 {
    let mut s = trace_of(x, n);
    let mut proj = vec![Complex64::new(0.0, 0.0); n * n];
    let mut proj_pt = vec![Complex64::new(0.0, 0.0); n * n];
    for _ in 0..8 {
        let before = s;
        match basis {
            DescentBasis::Primal => work.entries_mut().copy_from_slice(x),
            DescentBasis::Transposed => work.entries_mut().copy_from_slice(x_pt),
            DescentBasis::Slack => {
                for (out, (a, b)) in
                    work.entries_mut().iter_mut().zip(rho_pt.iter().zip(x_pt.iter()))
                {
                    *out = a + b;
                }
            }
        }
        let eig = match hermitian_eigensystem(work) {
            Ok(eig) => eig,
            Err(_) => break,
        };
        for k in 0..n {
            let mu = eig.values[k];
            if mu <= MIN_DECREASE {
                continue;
            }
            // The projector step in the diagonalized system, and its image
            // in the other system.  In the Primal basis the step applies to
            // X directly; in the other two it applies to X^(T_B), and its
            // partial transpose applies to X.
            let v = eig.vector(k);
            for i in 0..n {
                for j in 0..n {
                    proj[i * n + j] = v[i] * v[j].conj();
                }
            }
            pt_second_party(&proj, n1, n2, &mut proj_pt);
            let (step_x, step_pt): (&[Complex64], &[Complex64]) = match basis {
                DescentBasis::Primal => (&proj, &proj_pt),
                DescentBasis::Transposed | DescentBasis::Slack => (&proj_pt, &proj),
            };
            let feasible = |delta: f64,
                            sum_pt: &mut [Complex64],
                            scratch: &mut Vec<Complex64>|
             -> bool {
                let s_new = s - delta;
                // c1 on X − δ·step_x (automatic in the Primal basis).
                if basis != DescentBasis::Primal {
                    for (out, (a, b)) in sum_pt.iter_mut().zip(x.iter().zip(step_x.iter())) {
                        *out = a - delta * b;
                    }
                    if !psd_with_shift(sum_pt, n, PSD_SLACK * (s_new + 1e-300), scratch) {
                        return false;
                    }
                }
                // c2 on X^(T_B) − δ·step_pt (automatic in the Transposed
                // basis).  The n = 4 determinant shortcut is valid because
                // c1 already holds for the candidate.
                if basis != DescentBasis::Transposed {
                    for (out, (a, b)) in sum_pt.iter_mut().zip(x_pt.iter().zip(step_pt.iter())) {
                        *out = a - delta * b;
                    }
                    let c2 = if det_ok {
                        scratch.clear();
                        scratch.extend_from_slice(sum_pt);
                        crate::mat::det_in_place(scratch, n).re >= -DET_SLACK * s_new.powi(4)
                    } else {
                        psd_with_shift(sum_pt, n, PSD_SLACK * (s_new + 1e-300), scratch)
                    };
                    if !c2 {
                        return false;
                    }
                }
                // c3 on ρ^(T_B) + X^(T_B) − δ·step_pt (automatic in the
                // Slack basis).
                if basis != DescentBasis::Slack {
                    for (out, (r, (a, b))) in sum_pt
                        .iter_mut()
                        .zip(rho_pt.iter().zip(x_pt.iter().zip(step_pt.iter())))
                    {
                        *out = r + a - delta * b;
                    }
                    if det_ok {
                        scratch.clear();
                        scratch.extend_from_slice(sum_pt);
                        if crate::mat::det_in_place(scratch, n).re
                            < -DET_SLACK * (1.0 + s_new).powi(4)
                        {
                            return false;
                        }
                    } else if !psd_with_shift(sum_pt, n, PSD_SLACK * (1.0 + s_new), scratch) {
                        return false;
                    }
                }
                true
            };
            let delta = if feasible(mu, sum_pt, scratch) {
                mu
            } else {
                let (mut lo, mut hi) = (0.0, mu);
                while hi - lo > 1e-12 * (1.0 + s) {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if feasible(mid, sum_pt, scratch) {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                lo
            };
            if delta > 0.0 {
                for (entry, p) in x.iter_mut().zip(step_x.iter()) {
                    *entry -= delta * p;
                }
                for (entry, p) in x_pt.iter_mut().zip(step_pt.iter()) {
                    *entry -= delta * p;
                }
                s -= delta;
            }
        }
        if before - s < 1e-12 {
            break;
        }
    }
    s
}

/// Runs one descent sweep in each coordinate system, cycling until a full
/// cycle no longer improves the trace.
#[allow(clippy::too_many_arguments)]
fn descent_cycle(
    n: usize,
    n1: usize,
    n2: usize,
    det_ok: bool,
    rho_pt: &[Complex64],
    x: &mut [Complex64],
    x_pt: &mut [Complex64],
    sum_pt: &mut [Complex64],
    scratch: &mut Vec<Complex64>,
    work: &mut ComplexMatrix,
) -> f64 {
    let mut s = trace_of(x, n);
    for _ in 0..6 {
        let before = s;
        for basis in [DescentBasis::Primal, DescentBasis::Transposed, DescentBasis::Slack] {
            s = s.min(eigenvalue_descent(
                n, n1, n2, det_ok, rho_pt, x, x_pt, sum_pt, scratch, work, basis,
            ));
        }
        if before - s < 1e-12 {
            break;
        }
    }
    s
}

struct RestartOutcome {
    x: Vec<Complex64>,
    value: f64,
    iterations: u64,
    hit_max: bool,
}

/// One independent walk: start at X = I/2, polish, then descend.
fn run_walk(
    rho_pt: &[Complex64],
    n: usize,
    n1: usize,
    n2: usize,
    cfg: &SolverConfig,
    stream: u64,
) -> RestartOutcome {
    let det_ok = n == 4;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    let mut b = WalkBuffers::new(n);

    // X₀ = I/2 is always feasible: every partial transpose of a state has
    // eigenvalues ≥ −1/2.
    for i in 0..n {
        b.x[i * n + i] = Complex64::new(0.5, 0.0);
        b.x_pt[i * n + i] = Complex64::new(0.5, 0.0);
    }
    let mut s =
        ray_polish(n, rho_pt, &mut b.x, &mut b.x_pt, &mut b.sum_pt, &mut b.scratch, 1e-13);

    let mut step = cfg.initial_step;
    let mut rejections = 0u32;
    let mut iterations = 0u64;
    let mut hit_max = false;

    // Main descent: random Hermitian proposals, accepted only when all
    // constraints hold and the trace strictly decreases.
    while s > MIN_DECREASE {
        if iterations >= cfg.max_iters {
            hit_max = true;
            break;
        }
        if step < cfg.min_step {
            break;
        }
        iterations += 1;

        let dir_trace = sample_direction(&mut b.dir, n, false, &mut rng);
        let scale = step * s;
        let new_s = s + scale * dir_trace;
        if new_s > s - MIN_DECREASE {
            rejections += 1;
            if rejections >= SHRINK_AFTER {
                step *= cfg.step_shrink;
                rejections = 0;
            }
            continue;
        }
        for (c, (x, d)) in b.cand.iter_mut().zip(b.x.iter().zip(b.dir.iter())) {
            *c = x + scale * d;
        }
        if constraints_hold(
            n,
            n1,
            n2,
            det_ok,
            rho_pt,
            &b.cand,
            &mut b.cand_pt,
            &mut b.sum_pt,
            &mut b.scratch,
            new_s,
        ) {
            std::mem::swap(&mut b.x, &mut b.cand);
            std::mem::swap(&mut b.x_pt, &mut b.cand_pt);
            s = new_s;
            rejections = 0;
        } else {
            rejections += 1;
            if rejections >= SHRINK_AFTER {
                step *= cfg.step_shrink;
                rejections = 0;
            }
        }
    }
    let mut work = ComplexMatrix::zeros(n, n);
    s = ray_polish(n, rho_pt, &mut b.x, &mut b.x_pt, &mut b.sum_pt, &mut b.scratch, 1e-13);
    s = s.min(descent_cycle(
        n, n1, n2, det_ok, rho_pt, &mut b.x, &mut b.x_pt, &mut b.sum_pt, &mut b.scratch,
        &mut work,
    ));

    // Refinement: perturbed copies of X are projected back onto the PSD
    // cone (so the search can slide along the c1 face, where optima with
    // singular X live) and then landed exactly on the c3 frontier by the
    // ray polish.  This recovers the accuracy the raw walk loses near the
    // constraint boundaries.  Proposals alternate between dense directions
    // and rank-one bump-drains, and between step levels a deterministic
    // eigenvalue descent strips the weight the random moves left in
    // unneeded directions.  Each step level gets a bounded budget scaled
    // off max_iters; without it, ever-smaller accepted improvements could
    // pin one level forever.  The whole schedule re-anneals from the top
    // while a pass still pays, so a rebalance found late at a coarse step
    // can be polished again at fine ones.
    let level_budget = (cfg.max_iters / 50).clamp(200, 3_000) as u32;
    let mut anneal_rounds = 0u32;
    'anneal: loop {
        anneal_rounds += 1;
        let anneal_start = s;
        let mut step = 1e-1;
        let mut rejections = 0u32;
        let mut level_iters = 0u32;
        let mut x_changed = true;
        let mut bump = false;
        while s > MIN_DECREASE && step > 1e-7 {
        if iterations >= cfg.max_iters {
            hit_max = true;
            break 'anneal;
        }
        iterations += 1;
        level_iters += 1;
        bump = !bump;
        if bump {
            sample_bump_direction(&mut b.dir, n, &mut rng);
        } else {
            sample_direction(&mut b.dir, n, true, &mut rng);
        }
        let scale = step * s;
        for (c, (x, d)) in b.cand.iter_mut().zip(b.x.iter().zip(b.dir.iter())) {
            *c = x + scale * d;
        }
        // Project back onto c1 unless the perturbation stayed inside.
        let mut ok = psd_with_shift(&b.cand, n, 0.0, &mut b.scratch)
            || project_psd(&mut b.cand, n, &mut work);
        if ok {
            // Repair c2 instead of rejecting on it: alternate PSD
            // projections between the direct and transposed pictures.
            // Without this, a proposal big enough to re-shape X almost
            // surely leaves the transposed cone and the acceptance rate
            // collapses with dimension.
            pt_second_party(&b.cand, n1, n2, &mut b.cand_pt);
            let mut rounds = 0;
            loop {
                let cand_s = trace_of(&b.cand, n);
                let c2_ok = if det_ok {
                    b.scratch.clear();
                    b.scratch.extend_from_slice(&b.cand_pt);
                    crate::mat::det_in_place(&mut b.scratch, n).re
                        >= -DET_SLACK * cand_s.powi(4)
                } else {
                    psd_with_shift(&b.cand_pt, n, PSD_SLACK * cand_s, &mut b.scratch)
                };
                if c2_ok {
                    break;
                }
                rounds += 1;
                if rounds > 3 || !project_psd(&mut b.cand_pt, n, &mut work) {
                    ok = false;
                    break;
                }
                pt_second_party(&b.cand_pt, n1, n2, &mut b.cand);
                if !psd_with_shift(&b.cand, n, 0.0, &mut b.scratch)
                    && !project_psd(&mut b.cand, n, &mut work)
                {
                    ok = false;
                    break;
                }
                pt_second_party(&b.cand, n1, n2, &mut b.cand_pt);
            }
        }
        if ok {
            let polished = ray_polish(
                n,
                rho_pt,
                &mut b.cand,
                &mut b.cand_pt,
                &mut b.sum_pt,
                &mut b.scratch,
                1e-10,
            );
            if polished < s - MIN_DECREASE {
                std::mem::swap(&mut b.x, &mut b.cand);
                std::mem::swap(&mut b.x_pt, &mut b.cand_pt);
                s = polished;
                rejections = 0;
                x_changed = true;
            } else {
                rejections += 1;
            }
        } else {
            rejections += 1;
        }
        if rejections >= SHRINK_AFTER || level_iters >= level_budget {
            step *= cfg.step_shrink;
            rejections = 0;
            level_iters = 0;
            // The descent is deterministic, so repeating it on an
            // unchanged X cannot find anything new.
            if x_changed {
                s = s.min(descent_cycle(
                    n, n1, n2, det_ok, rho_pt, &mut b.x, &mut b.x_pt, &mut b.sum_pt,
                    &mut b.scratch, &mut work,
                ));
                x_changed = false;
            }
        }
        }
        if s <= MIN_DECREASE || anneal_rounds >= 8 || anneal_start - s <= 1e-9 {
            break;
        }
    }
    s = ray_polish(n, rho_pt, &mut b.x, &mut b.x_pt, &mut b.sum_pt, &mut b.scratch, 1e-13);
    s = s.min(descent_cycle(
        n, n1, n2, det_ok, rho_pt, &mut b.x, &mut b.x_pt, &mut b.sum_pt, &mut b.scratch,
        &mut work,
    ));

    RestartOutcome { x: b.x, value: s.max(0.0), iterations, hit_max }
}

/// A state rewritten on the product of its local supports, together with the
/// isometry that embeds the smaller space back into the original one.
struct SupportCompression {
    state: DensityMatrix,
    isometry: ComplexMatrix,
}

impl SupportCompression {
    /// Re-embeds a result computed on the compressed space.  The subtracted
    /// part is conjugated by the isometry (separability survives, since the
    /// isometry is a product of local maps), and the positive part is
    /// rebuilt from ρ itself so the pseudomixture reconstructs it exactly.
    fn lift(&self, rho: &DensityMatrix, small: SolverResult) -> Result<SolverResult> {
        let t = small.value;
        let minus = self
            .isometry
            .matmul(small.pseudomixture.minus.matrix())
            .matmul(&self.isometry.adjoint());
        let mut plus = rho.matrix().clone();
        plus.add_scaled(&minus, t);
        let plus = plus.scale(1.0 / (1.0 + t));
        Ok(SolverResult {
            value: small.value,
            converged: small.converged,
            iterations: small.iterations,
            restart_spread: small.restart_spread,
            pseudomixture: Pseudomixture {
                t,
                plus: DensityMatrix::new(rho.structure().clone(), plus)?,
                minus: DensityMatrix::new(rho.structure().clone(), minus)?,
            },
        })
    }
}

/// Detects rank-deficient reduced states and, when both local supports are
/// nontrivial and their product is strictly smaller than the ambient space,
/// rewrites ρ on supp(ρ_A) ⊗ supp(ρ_B).
///
/// Robustness is invariant under this rewrite: projecting a pseudomixture
/// onto the local supports keeps both parts separable and never raises the
/// subtracted weight, while any decomposition on the smaller space embeds
/// back unchanged.  The payoff is accuracy — a 2×3 state whose second
/// reduced state has rank 2 (every pure state there, by the Schmidt
/// decomposition) drops to 2×2, where the walk's determinant fast path and
/// denser acceptance make the stochastic search far more reliable.
fn compress_to_local_support(rho: &DensityMatrix) -> Result<Option<SupportCompression>> {
    const SUPPORT_EIGENVALUE: f64 = 1e-11;

    let mut bases = Vec::with_capacity(2);
    for party in 0..2 {
        let reduced = partial_trace(rho, &[party])?;
        let eig = hermitian_eigensystem(reduced.matrix())?;
        let d = reduced.dim();
        let kept: Vec<usize> =
            (0..d).filter(|&k| eig.values[k] > SUPPORT_EIGENVALUE).collect();
        bases.push(ComplexMatrix::from_fn(d, kept.len(), |i, j| {
            eig.vectors.entries()[i * d + kept[j]]
        }));
    }
    let (r1, r2) = (bases[0].cols(), bases[1].cols());
    if r1 < 2 || r2 < 2 || r1 * r2 >= rho.dim() {
        return Ok(None);
    }
    let isometry = bases[0].kron(&bases[1]);
    let compressed = isometry.adjoint().matmul(rho.matrix()).matmul(&isometry);
    let state = DensityMatrix::new(
        PartyStructure::bipartite(r1, r2)?,
        compressed.scale(1.0 / compressed.trace().re),
    )?;
    Ok(Some(SupportCompression { state, isometry }))
}

/// Minimizes the separable-noise weight for a 2×2 or 2×3 state by a
/// conditional random walk over the constraint set, returning the best value
/// across restarts together with the witnessing pseudomixture.
///
/// The objective is convex, so any local minimum is the global one; the
/// restart spread reports how consistently the stochastic search found it.
/// A result with `converged == false` is still a valid upper bound.
pub fn absolute_robustness(rho: &DensityMatrix, cfg: &SolverConfig) -> Result<SolverResult> {
    check_small_bipartite(rho)?;
    cfg.validate()?;
    WALK_INVOCATIONS.fetch_add(1, Ordering::Relaxed);

    if let Some(compression) = compress_to_local_support(rho)? {
        let small = solve_direct(&compression.state, cfg)?;
        return compression.lift(rho, small);
    }
    solve_direct(rho, cfg)
}

/// Runs the restart ensemble on the given state as-is and packages the best
/// witness into a pseudomixture.
fn solve_direct(rho: &DensityMatrix, cfg: &SolverConfig) -> Result<SolverResult> {
    let n = rho.dim();
    let dims = rho.structure().dims();
    let (n1, n2) = (dims[0], dims[1]);
    let rho_pt = partial_transpose(rho, 1)?;

    let outcomes: Vec<RestartOutcome> = (0..cfg.restarts as u64)
        .into_par_iter()
        .map(|k| run_walk(rho_pt.entries(), n, n1, n2, cfg, k))
        .collect();

    let mut best = 0usize;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut iterations = 0u64;
    let mut hit_max = false;
    for (k, o) in outcomes.iter().enumerate() {
        lo = lo.min(o.value);
        hi = hi.max(o.value);
        iterations += o.iterations;
        hit_max |= o.hit_max;
        if o.value < outcomes[best].value {
            best = k;
        }
    }
    let spread = hi - lo;
    let value = outcomes[best].value;

    let pseudomixture = if value <= 1e-12 {
        Pseudomixture {
            t: 0.0,
            plus: rho.clone(),
            minus: DensityMatrix::maximally_mixed(rho.structure().clone()),
        }
    } else {
        let x = ComplexMatrix::new(n, n, outcomes[best].x.clone())?;
        let minus = x.scale(1.0 / value);
        let mut plus = rho.matrix().clone();
        plus.add_scaled(&x, 1.0);
        let plus = plus.scale(1.0 / (1.0 + value));
        Pseudomixture {
            t: value,
            plus: DensityMatrix::new(rho.structure().clone(), plus)?,
            minus: DensityMatrix::new(rho.structure().clone(), minus)?,
        }
    };

    Ok(SolverResult {
        value,
        converged: spread <= cfg.agreement_tol && !hit_max,
        iterations,
        restart_spread: spread,
        pseudomixture,
    })
}
