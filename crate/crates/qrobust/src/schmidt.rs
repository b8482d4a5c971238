//! Schmidt decomposition of bipartite pure states.
//!
//! Any bipartite |ψ⟩ can be written Σᵢ aᵢ |lᵢ⟩⊗|rᵢ⟩ with nonnegative
//! coefficients a₁ ≥ a₂ ≥ … and orthonormal local bases.  The coefficients
//! drive every pure-state entanglement quantity in this crate.

use num_complex::Complex64;

use crate::eigen::hermitian_eigensystem;
use crate::error::{Error, Result};
use crate::mat::{inner, orthonormal_completion, ComplexMatrix};
use crate::state::PureState;
use crate::tol;

/// Schmidt data of a bipartite pure state.
///
/// `coefficients` are sorted descending and padded to m = min(n₁, n₂)
/// entries; `left_basis[i]` / `right_basis[i]` are the matching orthonormal
/// local vectors.  The phase freedom is fixed by making the first nonzero
/// component of each left vector real and positive.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    coefficients: Vec<f64>,
    left_basis: Vec<Vec<Complex64>>,
    right_basis: Vec<Vec<Complex64>>,
}

impl SchmidtDecomposition {
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn left_basis(&self) -> &[Vec<Complex64>] {
        &self.left_basis
    }

    pub fn right_basis(&self) -> &[Vec<Complex64>] {
        &self.right_basis
    }

    /// Number of coefficients above [`tol::SCHMIDT_ZERO`].
    pub fn rank(&self) -> usize {
        self.coefficients.iter().filter(|&&a| a > tol::SCHMIDT_ZERO).count()
    }

    /// Largest coefficient a₁.
    pub fn largest(&self) -> f64 {
        self.coefficients[0]
    }

    /// Σᵢ aᵢ |lᵢ⟩⊗|rᵢ⟩ as a flat amplitude vector.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let n1 = self.left_basis[0].len();
        let n2 = self.right_basis[0].len();
        let mut out = vec![Complex64::new(0.0, 0.0); n1 * n2];
        for ((&a, l), r) in self
            .coefficients
            .iter()
            .zip(&self.left_basis)
            .zip(&self.right_basis)
        {
            for i in 0..n1 {
                for j in 0..n2 {
                    out[i * n2 + j] += l[i] * r[j] * a;
                }
            }
        }
        out
    }
}

/// Computes the Schmidt decomposition of a bipartite pure state.
pub fn schmidt_decompose(psi: &PureState) -> Result<SchmidtDecomposition> {
    let structure = psi.structure();
    if !structure.is_bipartite() {
        return Err(Error::NotBipartite { parties: structure.party_count() });
    }
    let (n1, n2) = (structure.dims()[0], structure.dims()[1]);
    let m = n1.min(n2);

    // Amplitude matrix M with ψ_{ij} = ⟨i j|ψ⟩.
    let amps = psi.amplitudes();
    let matrix = ComplexMatrix::from_fn(n1, n2, |i, j| amps[i * n2 + j]);

    // Left vectors and squared coefficients from the reduced state M M†.
    let gram = matrix.matmul(&matrix.adjoint());
    let eig = hermitian_eigensystem(&gram)?;

    // Ascending order → take the top m, descending.
    let mut coefficients = Vec::with_capacity(m);
    let mut left_basis = Vec::with_capacity(m);
    let mut right_basis: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    for k in 0..m {
        let idx = n1 - 1 - k;
        let a = eig.values[idx].max(0.0).sqrt();
        let mut left = eig.vector(idx);

        // Phase convention: first nonzero left component real positive; the
        // matching right vector absorbs the inverse phase below.
        let mut phase = Complex64::new(1.0, 0.0);
        if let Some(lead) = left.iter().find(|x| x.norm() > tol::SCHMIDT_ZERO) {
            phase = lead / lead.norm();
            for x in &mut left {
                *x /= phase;
            }
        }

        if a > tol::SCHMIDT_ZERO {
            // r_k[j] = (Σᵢ conj(l_k[i]) ψ_{ij}) / a_k, with the phase folded in.
            let mut right: Vec<Complex64> = (0..n2)
                .map(|j| {
                    (0..n1).map(|i| (left[i] * phase).conj() * matrix[(i, j)]).sum::<Complex64>() * phase
                        / a
                })
                .collect();
            // Re-orthonormalize against the previous right vectors so tiny
            // coefficients cannot degrade orthogonality.
            for prev in &right_basis {
                let overlap = inner(prev, &right);
                for (x, p) in right.iter_mut().zip(prev) {
                    *x -= overlap * p;
                }
            }
            let norm = crate::mat::norm(&right);
            for x in &mut right {
                *x /= norm;
            }
            right_basis.push(right);
        } else {
            // Zero coefficient: any completion keeps the basis orthonormal
            // without touching the reconstruction.
            let extended = orthonormal_completion(&right_basis, n2);
            right_basis.push(extended.into_iter().next().expect("room left in the basis"));
        }

        coefficients.push(a);
        left_basis.push(left);
    }

    Ok(SchmidtDecomposition { coefficients, left_basis, right_basis })
}
