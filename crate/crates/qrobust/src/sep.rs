//! Separability verdicts, local support analysis, and the annotated
//! partial-transpose spectrum.
//!
//! For total dimension ≤ 6 (two qubits, or a qubit and a qutrit) positivity
//! of the partial transpose is *equivalent* to separability, so verdicts in
//! that range are exact.  For two qubits the verdict can be read off a single
//! determinant: the partial transpose has at most one negative eigenvalue,
//! hence det ρ^(T_B) ≥ 0 exactly when no eigenvalue is negative.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::eigen::{hermitian_eigensystem, hermitian_eigenvalues};
use crate::error::{Error, Result};
use crate::mat::{haar_unitary, ComplexMatrix};
use crate::schmidt::schmidt_decompose;
use crate::state::{partial_trace, partial_transpose, DensityMatrix, PartyStructure, PureState};
use crate::tol;

/// Outcome of a separability test, with the numbers that certify it.
#[derive(Clone, Debug)]
pub struct SeparabilityVerdict {
    /// The verdict itself.
    pub separable: bool,
    /// Minimum eigenvalue of the partial transpose.
    pub min_eigenvalue: f64,
    /// det ρ^(T_B), populated on the two-qubit fast path.
    pub determinant: Option<f64>,
    /// The PSD cutoff the verdict used ([`tol::PSD_MIN_EIGENVALUE`]).
    pub tolerance: f64,
}

/// Exact separability test for bipartite systems of total dimension ≤ 6.
///
/// Two-qubit systems take the determinant fast path (det ρ^(T_B) ≥
/// [`tol::DET_FAST_PATH`]); all other shapes use the spectral test.  Both
/// certificates are returned.
pub fn is_separable_small(rho: &DensityMatrix) -> Result<SeparabilityVerdict> {
    let structure = rho.structure();
    if !structure.is_bipartite() {
        return Err(Error::UnsupportedDimension(format!(
            "separability test requires a bipartite system, got {} parties",
            structure.party_count()
        )));
    }
    let n = rho.dim();
    if n > 6 {
        return Err(Error::UnsupportedDimension(format!(
            "positivity of the partial transpose is only decisive up to total dimension 6, got {n}"
        )));
    }

    let pt = partial_transpose(rho, 1)?;
    let min_eigenvalue = hermitian_eigenvalues(&pt)?[0];

    if n == 4 {
        let det = pt.det().re;
        Ok(SeparabilityVerdict {
            separable: det >= tol::DET_FAST_PATH,
            min_eigenvalue,
            determinant: Some(det),
            tolerance: tol::PSD_MIN_EIGENVALUE,
        })
    } else {
        Ok(SeparabilityVerdict {
            separable: min_eigenvalue >= tol::PSD_MIN_EIGENVALUE,
            min_eigenvalue,
            determinant: None,
            tolerance: tol::PSD_MIN_EIGENVALUE,
        })
    }
}

/// Local supports of a bipartite state.
///
/// The state lives on the product of its local supports; restricting to that
/// subspace strips trivial directions before bounds are computed.
#[derive(Clone, Debug)]
pub struct SupportInfo {
    /// Rank of each reduced state (eigenvalues above [`tol::SUPPORT_RANK`]).
    pub local_ranks: Vec<usize>,
    /// min(local ranks).
    pub m_tilde: usize,
    /// Product of the local ranks: dimension of the support product space.
    pub n_tilde: usize,
    /// Per-party projectors onto the local supports (full-dimension
    /// matrices).
    pub projectors: Vec<ComplexMatrix>,
    /// Per-party orthonormal support bases, one column per basis vector.
    pub local_bases: Vec<ComplexMatrix>,
}

impl SupportInfo {
    /// Expresses ρ on the product of its local supports.
    ///
    /// The result is a density matrix on the reduced structure
    /// `[rank_A, rank_B]`; its entanglement properties match ρ because the
    /// restriction is a local isometry.
    pub fn restrict(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let isometry = self.local_bases[0].kron(&self.local_bases[1]);
        let reduced = isometry.adjoint().matmul(rho.matrix()).matmul(&isometry);
        DensityMatrix::new(
            PartyStructure::new(self.local_ranks.clone())?,
            reduced,
        )
    }
}

/// Computes local ranks, support projectors and support bases of a bipartite
/// state.
pub fn support_info(rho: &DensityMatrix) -> Result<SupportInfo> {
    let structure = rho.structure();
    if !structure.is_bipartite() {
        return Err(Error::NotBipartite { parties: structure.party_count() });
    }

    let mut local_ranks = Vec::with_capacity(2);
    let mut projectors = Vec::with_capacity(2);
    let mut local_bases = Vec::with_capacity(2);
    for party in 0..2 {
        let reduced = partial_trace(rho, &[party])?;
        let eig = hermitian_eigensystem(reduced.matrix())?;
        let dim = reduced.dim();
        // Descending order: leading support directions first.
        let kept: Vec<usize> = (0..dim)
            .rev()
            .filter(|&k| eig.values[k] > tol::SUPPORT_RANK)
            .collect();
        let rank = kept.len();
        let basis = ComplexMatrix::from_fn(dim, rank, |i, j| eig.vectors[(i, kept[j])]);
        projectors.push(basis.matmul(&basis.adjoint()));
        local_bases.push(basis);
        local_ranks.push(rank);
    }

    Ok(SupportInfo {
        m_tilde: *local_ranks.iter().min().expect("two parties"),
        n_tilde: local_ranks.iter().product(),
        local_ranks,
        projectors,
        local_bases,
    })
}

/// One negative direction of the partial transpose.
#[derive(Clone, Debug)]
pub struct NegativeBranch {
    /// The negative eigenvalue λ.
    pub eigenvalue: f64,
    /// Largest Schmidt coefficient of the matching eigenvector.
    pub largest_schmidt_coefficient: f64,
}

/// The spectrum of ρ^(T_B) with every negative eigenvalue annotated by the
/// largest Schmidt coefficient of its eigenvector.
#[derive(Clone, Debug)]
pub struct PartialTransposeSpectrum {
    /// All eigenvalues, ascending.
    pub eigenvalues: Vec<f64>,
    /// One entry per negative eigenvalue, in ascending eigenvalue order.
    pub negative_branches: Vec<NegativeBranch>,
}

/// Eigenvalues within this distance are treated as one degenerate block when
/// annotating negative branches.
const DEGENERACY_TOL: f64 = 1e-10;

/// Number of random basis rotations sampled inside a degenerate block.
const DEGENERACY_ROTATIONS: usize = 64;

/// Computes the annotated spectrum of the partial transpose of a bipartite
/// state.
///
/// Inside a degenerate block of negative eigenvalues the eigenbasis is not
/// unique, so the annotation samples random rotations of the block and keeps
/// the smallest largest-Schmidt-coefficient seen — the choice that makes the
/// resulting robustness bound strongest.  The sampling is deterministic.
pub fn partial_transpose_spectrum(rho: &DensityMatrix) -> Result<PartialTransposeSpectrum> {
    let structure = rho.structure();
    if !structure.is_bipartite() {
        return Err(Error::NotBipartite { parties: structure.party_count() });
    }

    let pt = partial_transpose(rho, 1)?;
    let eig = hermitian_eigensystem(&pt)?;
    let negatives = eig.values.iter().filter(|&&v| v < 0.0).count();

    let largest_coefficient = |vector: Vec<Complex64>| -> Result<f64> {
        let psi = PureState::normalized(structure.clone(), vector)?;
        Ok(schmidt_decompose(&psi)?.largest())
    };

    let mut negative_branches = Vec::with_capacity(negatives);
    let mut k = 0;
    while k < negatives {
        // Extent of the degenerate block starting at k.
        let mut end = k + 1;
        while end < negatives && (eig.values[end] - eig.values[end - 1]).abs() <= DEGENERACY_TOL {
            end += 1;
        }

        if end - k == 1 {
            let a = largest_coefficient(eig.vector(k))?;
            negative_branches.push(NegativeBranch {
                eigenvalue: eig.values[k],
                largest_schmidt_coefficient: a,
            });
        } else {
            let block: Vec<Vec<Complex64>> = (k..end).map(|i| eig.vector(i)).collect();
            let d = block.len();
            let mut best = f64::INFINITY;
            for v in &block {
                best = best.min(largest_coefficient(v.clone())?);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..DEGENERACY_ROTATIONS {
                let u = haar_unitary(d, &mut rng);
                for col in 0..d {
                    let mut rotated = vec![Complex64::new(0.0, 0.0); block[0].len()];
                    for (row, member) in block.iter().enumerate() {
                        let w = u[(row, col)];
                        for (x, y) in rotated.iter_mut().zip(member) {
                            *x += w * y;
                        }
                    }
                    best = best.min(largest_coefficient(rotated)?);
                }
            }
            for i in k..end {
                negative_branches.push(NegativeBranch {
                    eigenvalue: eig.values[i],
                    largest_schmidt_coefficient: best,
                });
            }
        }
        k = end;
    }

    Ok(PartialTransposeSpectrum { eigenvalues: eig.values, negative_branches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn singlet() -> DensityMatrix {
        let s = PartyStructure::bipartite(2, 2).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::from_pure(
            &PureState::new(s, vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)]).unwrap(),
        )
    }

    /// F |Φ⁺⟩⟨Φ⁺| + (1−F)(I − |Φ⁺⟩⟨Φ⁺|)/3.
    fn werner(f: f64) -> DensityMatrix {
        let phi = singlet();
        let rest = ComplexMatrix::identity(4).sub(phi.matrix());
        let m = phi.matrix().scale(f).add(&rest.scale((1.0 - f) / 3.0));
        DensityMatrix::new(PartyStructure::bipartite(2, 2).unwrap(), m).unwrap()
    }

    fn random_wishart(n: usize, structure: PartyStructure, rng: &mut impl Rng) -> DensityMatrix {
        let g = ComplexMatrix::from_fn(n, n, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        let w = g.matmul(&g.adjoint());
        let m = w.scale(1.0 / w.trace().re);
        DensityMatrix::new(structure, m).unwrap()
    }

    #[test]
    fn singlet_is_entangled_with_certificates() {
        let v = is_separable_small(&singlet()).unwrap();
        assert!(!v.separable);
        assert_abs_diff_eq!(v.min_eigenvalue, -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(v.determinant.unwrap(), -0.0625, epsilon = 1e-12);
        assert_eq!(v.tolerance, tol::PSD_MIN_EIGENVALUE);
    }

    #[test]
    fn maximally_mixed_is_separable() {
        let s = PartyStructure::bipartite(2, 2).unwrap();
        let v = is_separable_small(&DensityMatrix::maximally_mixed(s)).unwrap();
        assert!(v.separable);
        assert!(v.min_eigenvalue > 0.0);
    }

    #[test]
    fn werner_threshold_splits_at_half() {
        assert!(is_separable_small(&werner(0.4)).unwrap().separable);
        assert!(is_separable_small(&werner(0.5)).unwrap().separable);
        assert!(!is_separable_small(&werner(0.6)).unwrap().separable);
    }

    #[test]
    fn qubit_qutrit_uses_spectral_test() {
        let s = PartyStructure::bipartite(2, 3).unwrap();
        let v = is_separable_small(&DensityMatrix::maximally_mixed(s)).unwrap();
        assert!(v.separable);
        assert!(v.determinant.is_none());
    }

    #[test]
    fn rejects_unsupported_shapes() {
        let s = PartyStructure::bipartite(2, 4).unwrap();
        assert!(matches!(
            is_separable_small(&DensityMatrix::maximally_mixed(s)),
            Err(Error::UnsupportedDimension(_))
        ));
        let s = PartyStructure::new(vec![2, 2, 2]).unwrap();
        assert!(matches!(
            is_separable_small(&DensityMatrix::maximally_mixed(s)),
            Err(Error::UnsupportedDimension(_))
        ));
    }

    #[test]
    fn determinant_and_spectral_tests_agree_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let s = PartyStructure::bipartite(2, 2).unwrap();
        let mut seen_separable = 0;
        let mut seen_entangled = 0;
        for _ in 0..10_000 {
            let rho = random_wishart(4, s.clone(), &mut rng);
            let v = is_separable_small(&rho).unwrap();
            let spectral = v.min_eigenvalue >= tol::PSD_MIN_EIGENVALUE;
            assert_eq!(v.separable, spectral, "det and spectral verdicts disagree");
            if v.separable {
                seen_separable += 1;
            } else {
                seen_entangled += 1;
            }
        }
        // The sample must exercise both outcomes for the test to mean much.
        assert!(seen_separable > 100);
        assert!(seen_entangled > 100);
    }

    #[test]
    fn support_of_embedded_singlet_is_two_by_two() {
        // Singlet amplitudes placed in a [3, 3] system.
        let s = PartyStructure::bipartite(3, 3).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![c(0.0, 0.0); 9];
        v[0] = c(r, 0.0); // |00⟩
        v[4] = c(r, 0.0); // |11⟩
        let rho = DensityMatrix::from_pure(&PureState::new(s, v).unwrap());

        let info = support_info(&rho).unwrap();
        assert_eq!(info.local_ranks, vec![2, 2]);
        assert_eq!(info.m_tilde, 2);
        assert_eq!(info.n_tilde, 4);

        // P ρ P = ρ.
        let p = info.projectors[0].kron(&info.projectors[1]);
        let projected = p.matmul(rho.matrix()).matmul(&p);
        assert!(projected.max_abs_diff(rho.matrix()) < 1e-9);

        // The restriction is still a maximally entangled two-qubit state.
        let restricted = info.restrict(&rho).unwrap();
        assert_eq!(restricted.dim(), 4);
        let pt = partial_transpose(&restricted, 1).unwrap();
        let min = hermitian_eigenvalues(&pt).unwrap()[0];
        assert_abs_diff_eq!(min, -0.5, epsilon = 1e-10);
    }

    #[test]
    fn support_of_product_and_full_rank_states() {
        let s = PartyStructure::bipartite(2, 2).unwrap();
        let product = DensityMatrix::from_pure(&PureState::basis_state(s.clone(), &[0, 0]));
        let info = support_info(&product).unwrap();
        assert_eq!(info.local_ranks, vec![1, 1]);
        assert_eq!(info.n_tilde, 1);

        let mixed = DensityMatrix::maximally_mixed(s);
        let info = support_info(&mixed).unwrap();
        assert_eq!(info.local_ranks, vec![2, 2]);
        assert_eq!(info.n_tilde, 4);
    }

    #[test]
    fn singlet_spectrum_has_one_negative_branch() {
        let spec = partial_transpose_spectrum(&singlet()).unwrap();
        assert_abs_diff_eq!(spec.eigenvalues[0], -0.5, epsilon = 1e-12);
        assert_eq!(spec.negative_branches.len(), 1);
        let b = &spec.negative_branches[0];
        assert_abs_diff_eq!(b.eigenvalue, -0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(
            b.largest_schmidt_coefficient,
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-10
        );
    }

    #[test]
    fn spectrum_sums_to_one_and_coefficients_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for (n1, n2) in [(2, 2), (2, 3)] {
            let s = PartyStructure::bipartite(n1, n2).unwrap();
            for _ in 0..50 {
                let rho = random_wishart(n1 * n2, s.clone(), &mut rng);
                let spec = partial_transpose_spectrum(&rho).unwrap();
                let total: f64 = spec.eigenvalues.iter().sum();
                assert_abs_diff_eq!(total, 1.0, epsilon = 1e-9);
                let m = n1.min(n2) as f64;
                for b in &spec.negative_branches {
                    assert!(b.eigenvalue < 0.0);
                    assert!(b.largest_schmidt_coefficient >= 1.0 / m.sqrt() - 1e-10);
                    assert!(b.largest_schmidt_coefficient <= 1.0 + 1e-10);
                }
            }
        }
    }

    #[test]
    fn degenerate_negative_block_of_max_entangled_qutrits() {
        // The maximally entangled two-qutrit state has a threefold-degenerate
        // negative eigenvalue −1/3 whose eigenspace is spanned by
        // antisymmetric vectors; every vector in it has largest Schmidt
        // coefficient 1/√2, so the sampled annotation must land there.
        let s = PartyStructure::bipartite(3, 3).unwrap();
        let r = 1.0 / 3.0f64.sqrt();
        let mut v = vec![c(0.0, 0.0); 9];
        v[0] = c(r, 0.0);
        v[4] = c(r, 0.0);
        v[8] = c(r, 0.0);
        let rho = DensityMatrix::from_pure(&PureState::new(s, v).unwrap());

        let spec = partial_transpose_spectrum(&rho).unwrap();
        assert_eq!(spec.negative_branches.len(), 3);
        for b in &spec.negative_branches {
            assert_abs_diff_eq!(b.eigenvalue, -1.0 / 3.0, epsilon = 1e-10);
            assert_abs_diff_eq!(
                b.largest_schmidt_coefficient,
                std::f64::consts::FRAC_1_SQRT_2,
                epsilon = 1e-9
            );
        }
    }
}
