//! Robustness of entanglement for finite-dimensional multipartite quantum states.
//!
//! The robustness of a state ρ is the minimal weight `t` of a separable state
//! ρ⁻ that must be mixed into ρ so that the result is separable:
//!
//! > ρ = (1 + t) ρ⁺ − t ρ⁻,   with ρ⁺, ρ⁻ separable.
//!
//! Every state admits such a *local pseudomixture*; the minimal `t` quantifies
//! how much separable noise the entanglement of ρ survives.  This crate
//! computes that quantity and its relatives:
//!
//! * [`pure`] — closed forms for pure states: entropy of entanglement,
//!   robustness `(Σᵢ aᵢ)² − 1` from the Schmidt coefficients, the explicit
//!   optimal pseudomixture and its decomposition into a finite ensemble of
//!   product vectors, and the variant that uses the maximally mixed state as
//!   the subtracted part.
//! * [`bounds`] — computable bounds for mixed states: spectral lower bounds
//!   from the partial transpose, local-rank and support-restriction upper
//!   bounds, the two-qubit eigenvector-angle interval, concurrence, exact
//!   values for the Werner and corner families, and an entanglement witness
//!   built from antisymmetric projectors.
//! * [`solver`] — numerical minimization: exact relative robustness with
//!   respect to a fixed separable reference, and a conditional random walk
//!   that minimizes the subtracted weight over all separable directions.
//! * [`volume`] — Monte-Carlo estimation of the volume of separable states,
//!   with an analytic lower bound on that volume.
//! * [`state`], [`schmidt`], [`sep`] — the state model: multipartite
//!   structure, density matrices, pure states, partial trace/transpose,
//!   Schmidt decomposition, separability verdicts, support analysis.
//! * [`cli`] — the command-line interface exposed by the `qrobust` binary.
//!
//! Dimensions are tiny throughout (a handful of qubits/qutrits), so all
//! linear algebra is dense and self-contained ([`mat`], [`eigen`]).
//!
//! # Conventions
//!
//! Multipartite indices are flattened row-major with the **last party varying
//! fastest**: for parties of dimensions `[n₁, …, n_N]` the product basis
//! vector `|i₁ … i_N⟩` sits at flat index `((i₁·n₂ + i₂)·n₃ + i₃)…`.  For a
//! bipartite system this is `i_A · n_B + i_B`, matching the Kronecker product
//! `A ⊗ B`.
//!
//! All numerical verdicts use the shared tolerance constants in [`tol`].

pub mod bounds;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod mat;
pub mod pure;
pub mod schmidt;
pub mod sep;
pub mod solver;
pub mod state;
pub mod volume;

pub use error::{Error, Result};

/// Shared numerical tolerances.
///
/// Every module uses these constants rather than ad-hoc literals so that a
/// verdict ("is this PSD?", "is this Hermitian?") means the same thing
/// everywhere, and so reports can quote the exact thresholds they used.
pub mod tol {
    /// Maximum entry-wise asymmetry |M − M†| tolerated in a Hermitian matrix.
    pub const HERMITICITY: f64 = 1e-12;

    /// A Hermitian matrix counts as positive semidefinite when its minimum
    /// eigenvalue is at least this (slightly negative) cutoff.
    pub const PSD_MIN_EIGENVALUE: f64 = -1e-9;

    /// Maximum deviation of a density-matrix trace from 1.
    pub const TRACE: f64 = 1e-9;

    /// Maximum deviation of a pure-state norm from 1.
    pub const NORM: f64 = 1e-12;

    /// Schmidt coefficients below this are treated as exactly zero when
    /// counting Schmidt rank.
    pub const SCHMIDT_ZERO: f64 = 1e-12;

    /// Reduced-state eigenvalues above this count toward the local rank.
    pub const SUPPORT_RANK: f64 = 1e-10;

    /// Two-qubit determinant fast path: det ρ^(T_B) at least this cutoff
    /// counts as a positive partial transpose.
    pub const DET_FAST_PATH: f64 = -1e-12;
}
