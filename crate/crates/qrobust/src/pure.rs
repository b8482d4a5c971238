//! Exact robustness quantities and pseudomixture constructions for bipartite
//! pure states.
//!
//! For a bipartite pure state with Schmidt coefficients a₁ ≥ a₂ ≥ … ≥ a_m
//! (Σᵢ aᵢ² = 1) everything here is closed-form:
//!
//! * robustness `R = (Σᵢ aᵢ)² − 1` — the least amount of separable noise
//!   that, mixed in, washes out all entanglement;
//! * random robustness `R_r = n·a₁·a₂` — the same quantity when the noise is
//!   fixed to be maximally mixed (n is the total dimension);
//! * entropy of entanglement `E = −Σᵢ aᵢ² log₂ aᵢ²`.
//!
//! The constructions that *achieve* these values are also exact, and this
//! module builds them: the optimal pseudomixture ρ = (1+R)ρ⁺ − Rρ⁻ with both
//! parts separable, an explicit ensemble of product vectors averaging to ρ⁺,
//! and a decomposition of the maximally mixed state that certifies R_r.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::{tensor, ComplexMatrix};
use crate::schmidt::{schmidt_decompose, SchmidtDecomposition};
use crate::state::{DensityMatrix, PureState};
use crate::tol;

/// Entropy of entanglement −Σᵢ aᵢ² log₂ aᵢ² of a bipartite pure state.
///
/// Zero exactly when the state is a product state; log₂ m for a maximally
/// entangled state of Schmidt rank m.
pub fn entropy_of_entanglement(psi: &PureState) -> Result<f64> {
    let schmidt = schmidt_decompose(psi)?;
    let acc: f64 = schmidt
        .coefficients()
        .iter()
        .filter(|&&a| a > tol::SCHMIDT_ZERO)
        .map(|&a| {
            let p = a * a;
            p * p.log2()
        })
        .sum();
    Ok((-acc).max(0.0))
}

/// Robustness (Σᵢ aᵢ)² − 1 of a bipartite pure state.
///
/// This is the weight of the cheapest separable state that can be
/// pseudo-mixed with the state to reach a separable state; it is zero exactly
/// for product states and m − 1 for a maximally entangled state of Schmidt
/// rank m.
pub fn pure_robustness(psi: &PureState) -> Result<f64> {
    let schmidt = schmidt_decompose(psi)?;
    Ok(robustness_from_coefficients(schmidt.coefficients()))
}

/// Random robustness n·a₁·a₂ of a bipartite pure state, where n is the total
/// dimension and a₁ ≥ a₂ are the two largest Schmidt coefficients.
///
/// This is the weight of maximally mixed noise needed to wash out the
/// entanglement; it is zero for product states.
pub fn pure_random_robustness(psi: &PureState) -> Result<f64> {
    let schmidt = schmidt_decompose(psi)?;
    let a = schmidt.coefficients();
    let n = psi.structure().total_dim() as f64;
    Ok(n * a[0] * a.get(1).copied().unwrap_or(0.0))
}

fn robustness_from_coefficients(a: &[f64]) -> f64 {
    let s: f64 = a.iter().sum();
    (s * s - 1.0).max(0.0)
}

/// A decomposition ρ = (1 + t)·ρ⁺ − t·ρ⁻ of a state into two density
/// matrices with a non-negative weight t.
///
/// When both parts are separable this certifies that mixing t parts of ρ⁻
/// into one part of ρ disentangles it, i.e. that the robustness of ρ is at
/// most t.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Pseudomixture {
    /// Weight of the subtracted part.
    pub t: f64,
    /// The state (ρ + t·ρ⁻)/(1 + t).
    pub plus: DensityMatrix,
    /// The subtracted state ρ⁻.
    pub minus: DensityMatrix,
}

impl Pseudomixture {
    /// The matrix (1 + t)·ρ⁺ − t·ρ⁻ that the pseudomixture represents.
    pub fn reconstruction(&self) -> ComplexMatrix {
        let mut m = self.plus.matrix().scale(1.0 + self.t);
        m.add_scaled(self.minus.matrix(), -self.t);
        m
    }

    /// Largest entrywise deviation between the reconstruction and ρ.
    pub fn reconstruction_defect(&self, rho: &DensityMatrix) -> f64 {
        self.reconstruction().max_abs_diff(rho.matrix())
    }

    /// Checks that this pseudomixture represents ρ within `tolerance`.
    pub fn validate_against(&self, rho: &DensityMatrix, tolerance: f64) -> Result<()> {
        if self.plus.dim() != rho.dim() || self.minus.dim() != rho.dim() {
            return Err(Error::DimensionMismatch {
                expected: rho.dim(),
                actual: self.plus.dim(),
            });
        }
        if self.t < 0.0 || !self.t.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "pseudomixture weight must be a non-negative finite number, got {}",
                self.t
            )));
        }
        let defect = self.reconstruction_defect(rho);
        if defect > tolerance {
            return Err(Error::InvalidParameter(format!(
                "pseudomixture reconstructs the state only to {defect:.3e}, worse than {tolerance:.3e}"
            )));
        }
        Ok(())
    }
}

/// The subtracted separable state of the optimal pseudomixture, on the full
/// space: (1/R)·Σ_{i≠j} aᵢaⱼ |uᵢvⱼ⟩⟨uᵢvⱼ| in the Schmidt product basis.
fn optimal_minus(schmidt: &SchmidtDecomposition, n: usize, r: f64) -> ComplexMatrix {
    let a = schmidt.coefficients();
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..a.len() {
        for j in 0..a.len() {
            if i == j || a[i] * a[j] == 0.0 {
                continue;
            }
            let w = tensor(&schmidt.left_basis()[i], &schmidt.right_basis()[j]);
            m.add_scaled(&ComplexMatrix::outer(&w, &w), a[i] * a[j] / r);
        }
    }
    m
}

/// Builds the pseudomixture ρ = (1 + R)ρ⁺ − Rρ⁻ that achieves the robustness
/// R of a bipartite pure state.
///
/// Both parts are separable: ρ⁻ is diagonal in the Schmidt product basis and
/// ρ⁺ is an average of explicit product vectors (see
/// [`phase_product_ensemble`]).  Product states are rejected with
/// [`Error::ProductState`] — their robustness is zero and there is nothing to
/// subtract.
pub fn optimal_pseudomixture(psi: &PureState) -> Result<Pseudomixture> {
    let schmidt = schmidt_decompose(psi)?;
    if schmidt.rank() < 2 {
        return Err(Error::ProductState);
    }
    let r = robustness_from_coefficients(schmidt.coefficients());
    let n = psi.structure().total_dim();

    let minus = optimal_minus(&schmidt, n, r);
    let rho = ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes());
    let mut plus = rho;
    plus.add_scaled(&minus, r);
    let plus = plus.scale(1.0 / (1.0 + r));

    Ok(Pseudomixture {
        t: r,
        plus: DensityMatrix::new(psi.structure().clone(), plus)?,
        minus: DensityMatrix::new(psi.structure().clone(), minus)?,
    })
}

/// An ensemble of product vectors whose uniform average is the separable
/// state ρ⁺ of the optimal pseudomixture.
#[derive(Clone, Debug)]
pub struct PhaseProductEnsemble {
    vectors: Vec<PureState>,
    alphas: Vec<u64>,
}

impl PhaseProductEnsemble {
    /// The product vectors, each exactly normalized.
    pub fn vectors(&self) -> &[PureState] {
        &self.vectors
    }

    /// The phase exponents α₁ = 0, α_{j+1} = 2αⱼ + 1 attached to the Schmidt
    /// directions; their pairwise differences are distinct mod 2^m − 1, which
    /// is what cancels the unwanted cross terms in the average.
    pub fn alphas(&self) -> &[u64] {
        &self.alphas
    }

    /// Number of vectors in the ensemble (2^m − 1 for Schmidt rank m).
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    /// True when the ensemble holds no vectors (never, for a valid build).
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Uniform mixture of the ensemble.
    pub fn mixture(&self) -> Result<DensityMatrix> {
        let first = &self.vectors[0];
        let n = first.structure().total_dim();
        let mut m = ComplexMatrix::zeros(n, n);
        let w = 1.0 / self.vectors.len() as f64;
        for v in &self.vectors {
            m.add_scaled(&ComplexMatrix::outer(v.amplitudes(), v.amplitudes()), w);
        }
        DensityMatrix::new(first.structure().clone(), m)
    }
}

/// Builds the explicit product-vector ensemble averaging to the ρ⁺ of
/// [`optimal_pseudomixture`].
///
/// For Schmidt rank m the ensemble has 2^m − 1 vectors e_r ⊗ ē_r with
/// ⟨uᵢ|e_r⟩ = √aᵢ · exp(2πi·αᵢ·r/α) / (1+R)^{1/4}, where α₁ = 0,
/// α_{j+1} = 2αⱼ + 1 and α = 2^m − 1.  The phases αᵢ grow so that all
/// pairwise differences are distinct modulo α, which makes the cross terms of
/// the average cancel exactly; each vector is exactly normalized because
/// (Σᵢ aᵢ)² = 1 + R.
pub fn phase_product_ensemble(psi: &PureState) -> Result<PhaseProductEnsemble> {
    let schmidt = schmidt_decompose(psi)?;
    let m = schmidt.rank();
    if m < 2 {
        return Err(Error::ProductState);
    }
    let a = &schmidt.coefficients()[..m];
    let r = robustness_from_coefficients(schmidt.coefficients());

    // α₁ = 0, α_{j+1} = 2αⱼ + 1, i.e. αⱼ = 2^(j−1) − 1.
    let alphas: Vec<u64> = (0..m).map(|j| (1u64 << j) - 1).collect();
    let modulus = (1u64 << m) - 1;
    let scale = 1.0 / (1.0 + r).powf(0.25);

    let (n1, n2) = (schmidt.left_basis()[0].len(), schmidt.right_basis()[0].len());
    let mut vectors = Vec::with_capacity(modulus as usize);
    for step in 0..modulus {
        let mut left = vec![Complex64::new(0.0, 0.0); n1];
        let mut right = vec![Complex64::new(0.0, 0.0); n2];
        for i in 0..m {
            let phase = std::f64::consts::TAU * (alphas[i] * step % modulus) as f64 / modulus as f64;
            let c = Complex64::from_polar(a[i].sqrt() * scale, phase);
            for (x, u) in left.iter_mut().zip(&schmidt.left_basis()[i]) {
                *x += c * u;
            }
            for (y, v) in right.iter_mut().zip(&schmidt.right_basis()[i]) {
                *y += c.conj() * v;
            }
        }
        vectors.push(PureState::new(psi.structure().clone(), tensor(&left, &right))?);
    }
    Ok(PhaseProductEnsemble { vectors, alphas })
}

/// The maximally mixed state written as a mixture of two explicitly
/// separable states tied to a bipartite pure state.
///
/// For random robustness R_r = n·a₁·a₂ and robustness R of the state,
/// I/n = (R/R_r)·ρ⁻ + (1 − R/R_r)·ρ̃, where ρ⁻ is the subtracted state of
/// the optimal pseudomixture and ρ̃ is diagonal in the Schmidt product basis
/// with entries (a₁a₂ − aᵢaⱼ)/(R_r − R) off the correlated diagonal and
/// a₁a₂/(R_r − R) on it.  Both parts being separable certifies the random
/// robustness value.
#[derive(Clone, Debug)]
pub struct IdentityDecomposition {
    /// Weight R/R_r of the subtracted state.
    pub subtracted_weight: f64,
    /// The subtracted state ρ⁻ of the optimal pseudomixture.
    pub subtracted: DensityMatrix,
    /// Weight 1 − R/R_r of the residual.
    pub residual_weight: f64,
    /// The residual separable state ρ̃.
    pub residual: DensityMatrix,
}

/// Decomposes the maximally mixed state into the two separable parts
/// described on [`IdentityDecomposition`].
pub fn identity_decomposition(psi: &PureState) -> Result<IdentityDecomposition> {
    let schmidt = schmidt_decompose(psi)?;
    if schmidt.rank() < 2 {
        return Err(Error::ProductState);
    }
    let a = schmidt.coefficients();
    let r = robustness_from_coefficients(a);
    let n = psi.structure().total_dim();
    let r_random = n as f64 * a[0] * a[1];
    let gap = r_random - r;
    if gap <= tol::SCHMIDT_ZERO {
        return Err(Error::InvalidParameter(format!(
            "random robustness {r_random} does not exceed robustness {r}; the residual part is degenerate"
        )));
    }

    let subtracted = optimal_minus(&schmidt, n, r);

    // ρ̃ on the full product basis {uᵢ ⊗ vⱼ}: Schmidt vectors first, then the
    // completions of either factor, with aᵢ = 0 on completion directions.
    let (n1, n2) = (schmidt.left_basis()[0].len(), schmidt.right_basis()[0].len());
    let lefts = full_local_basis(schmidt.left_basis(), n1);
    let rights = full_local_basis(schmidt.right_basis(), n2);
    let top = a[0] * a[1];
    let mut residual = ComplexMatrix::zeros(n, n);
    for (i, u) in lefts.iter().enumerate() {
        for (j, v) in rights.iter().enumerate() {
            let ai = a.get(i).copied().unwrap_or(0.0);
            let aj = a.get(j).copied().unwrap_or(0.0);
            let c = if i != j { top - ai * aj } else { top };
            let w = tensor(u, v);
            residual.add_scaled(&ComplexMatrix::outer(&w, &w), c / gap);
        }
    }

    Ok(IdentityDecomposition {
        subtracted_weight: r / r_random,
        subtracted: DensityMatrix::new(psi.structure().clone(), subtracted)?,
        residual_weight: gap / r_random,
        residual: DensityMatrix::new(psi.structure().clone(), residual)?,
    })
}

fn full_local_basis(basis: &[Vec<Complex64>], dim: usize) -> Vec<Vec<Complex64>> {
    let mut out = basis.to_vec();
    out.extend(crate::mat::orthonormal_completion(basis, dim));
    out
}

/// Builds the pseudomixture ρ = (1 + R_r)ρ⁺ − R_r·(I/n) that achieves the
/// random robustness R_r = n·a₁·a₂ of a bipartite pure state.
///
/// ρ⁺ is assembled as the convex combination
/// ((1 + R)·ρ⁺_optimal + (R_r − R)·ρ̃) / (1 + R_r) of the two separable
/// states from [`optimal_pseudomixture`] and [`identity_decomposition`],
/// which makes its own separability explicit.  Product states are rejected
/// with [`Error::ProductState`] — they need no noise at all.
pub fn maximally_mixed_pseudomixture(psi: &PureState) -> Result<Pseudomixture> {
    let schmidt = schmidt_decompose(psi)?;
    if schmidt.rank() < 2 {
        return Err(Error::ProductState);
    }
    let a = schmidt.coefficients();
    let r = robustness_from_coefficients(a);
    let n = psi.structure().total_dim();
    let r_random = n as f64 * a[0] * a[1];

    let optimal = optimal_pseudomixture(psi)?;
    let split = identity_decomposition(psi)?;
    let mut plus = optimal.plus.matrix().scale((1.0 + r) / (1.0 + r_random));
    plus.add_scaled(split.residual.matrix(), (r_random - r) / (1.0 + r_random));

    Ok(Pseudomixture {
        t: r_random,
        plus: DensityMatrix::new(psi.structure().clone(), plus)?,
        minus: DensityMatrix::maximally_mixed(psi.structure().clone()),
    })
}
