//! Robustness bounds and closed forms for mixed bipartite states.
//!
//! Exact robustness of a mixed state is only computable numerically (and only
//! where positivity of the partial transpose characterizes separability), but
//! a family of cheap spectral bounds brackets it in every dimension:
//!
//! * lower: each negative eigenvalue λ of ρ^(T_B) forces R ≥ |λ|/a₁², with
//!   a₁ the largest Schmidt coefficient of its eigenvector;
//! * upper: R ≤ m̃ − 1 on the local supports, and R is at most the weight of
//!   maximally mixed noise needed on the support space;
//! * two qubits only: R ∈ [|λ|/cos²θ, 2|λ|], R ≤ concurrence, and exact
//!   closed forms for the Werner family and a diagonal-plus-pure family.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eigen::{hermitian_eigensystem, hermitian_eigenvalues};
use crate::error::{Error, Result};
use crate::mat::ComplexMatrix;
use crate::sep::{partial_transpose_spectrum, support_info, PartialTransposeSpectrum};
use crate::state::{partial_transpose, DensityMatrix, PartyStructure};
use crate::tol;

/// Which bound produced a number in a [`RobustnessInterval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    /// Sum of the negative partial-transpose eigenvalues (lower).
    Negativity,
    /// Support-rank bound m̃ − 1 (upper).
    SupportRank,
    /// Support-restricted random robustness (upper).
    SupportRandomRobustness,
    /// Two-qubit eigenvector-angle bounds (either side).
    EigenvectorAngle,
    /// Concurrence (upper, two qubits).
    Concurrence,
    /// n·|λ_min| of the partial transpose (lower).
    MinEigenvalue,
    /// The dimensional ceiling n/2 (upper).
    DimensionCeiling,
    /// A closed form with no slack on its side.
    Exact,
}

impl std::fmt::Display for BoundSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BoundSource::Negativity => "negativity",
            BoundSource::SupportRank => "support-rank",
            BoundSource::SupportRandomRobustness => "support-random-robustness",
            BoundSource::EigenvectorAngle => "eigenvector-angle",
            BoundSource::Concurrence => "concurrence",
            BoundSource::MinEigenvalue => "min-eigenvalue",
            BoundSource::DimensionCeiling => "dimension-ceiling",
            BoundSource::Exact => "exact",
        };
        f.write_str(s)
    }
}

/// A two-sided robustness bracket with the provenance of each side.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RobustnessInterval {
    /// Certified lower bound (0 ≤ lower ≤ upper).
    pub lower: f64,
    /// Certified upper bound.
    pub upper: f64,
    /// Which bound supplied `lower`.
    pub lower_source: BoundSource,
    /// Which bound supplied `upper`.
    pub upper_source: BoundSource,
}

/// Lower bound from the negative part of the partial transpose: the best
/// |λ|/a₁² over all negative eigenvalues, each weighted by the largest
/// Schmidt coefficient a₁ of its eigenvector.  Zero when nothing is negative.
pub fn negativity_lower_bound(spectrum: &PartialTransposeSpectrum) -> f64 {
    spectrum
        .negative_branches
        .iter()
        .map(|b| -b.eigenvalue / (b.largest_schmidt_coefficient * b.largest_schmidt_coefficient))
        .fold(0.0, f64::max)
}

/// Upper bound from the local supports: min(m̃ − 1, random robustness of the
/// support-restricted state).
///
/// The second branch is exact when the support space has total dimension
/// ñ ≤ 6; above that the general ñ/2 bound stands in.
pub fn support_upper_bound(rho: &DensityMatrix) -> Result<f64> {
    let (rank_bound, restricted_bound, _) = support_bound_parts(rho)?;
    Ok(rank_bound.min(restricted_bound))
}

/// The two support-based upper bounds and whether the second fell back to
/// the ñ/2 surrogate (support dimension too large for the exact value).
fn support_bound_parts(rho: &DensityMatrix) -> Result<(f64, f64, bool)> {
    let info = support_info(rho)?;
    let rank_bound = (info.m_tilde as f64 - 1.0).max(0.0);
    let n_tilde = info.n_tilde as f64;
    if info.n_tilde <= 6 {
        let restricted = info.restrict(rho)?;
        let pt = partial_transpose(&restricted, 1)?;
        let min = hermitian_eigenvalues(&pt)?[0];
        Ok((rank_bound, n_tilde * (-min).max(0.0), false))
    } else {
        Ok((rank_bound, n_tilde / 2.0, true))
    }
}

/// Two-qubit robustness bracket [|λ|/cos²θ, 2|λ|] from the negative
/// eigenvalue λ of ρ^(T_B) and the Schmidt angle θ of its eigenvector
/// (cos θ = largest coefficient).
///
/// When the eigenvector is maximally entangled (cos²θ = 1/2) the bracket
/// collapses to the exact value 2|λ|.
pub fn two_qubit_interval(rho: &DensityMatrix) -> Result<RobustnessInterval> {
    if rho.dim() != 4 || !rho.structure().is_bipartite() {
        return Err(Error::UnsupportedDimension(format!(
            "the eigenvector bounds apply only to two-qubit states, got dims {:?}",
            rho.structure().dims()
        )));
    }
    let spectrum = partial_transpose_spectrum(rho)?;
    if spectrum.eigenvalues[0] >= tol::PSD_MIN_EIGENVALUE {
        return Err(Error::NotEntangled);
    }
    let branch = &spectrum.negative_branches[0];
    let lam = -branch.eigenvalue;
    let cos_sq = branch.largest_schmidt_coefficient * branch.largest_schmidt_coefficient;
    Ok(RobustnessInterval {
        lower: lam / cos_sq,
        upper: 2.0 * lam,
        lower_source: BoundSource::EigenvectorAngle,
        upper_source: BoundSource::EigenvectorAngle,
    })
}

/// Wootters concurrence of a two-qubit state: C = max(0, √μ₁−√μ₂−√μ₃−√μ₄)
/// with μᵢ the descending eigenvalues of ρ·(σ_y⊗σ_y)·ρ*·(σ_y⊗σ_y).
///
/// Complex conjugation is taken in the computational basis.  The concurrence
/// upper-bounds the robustness and equals it on pure states.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 || !rho.structure().is_bipartite() {
        return Err(Error::UnsupportedDimension(format!(
            "the concurrence applies only to two-qubit states, got dims {:?}",
            rho.structure().dims()
        )));
    }
    let yy = sigma_y().kron(&sigma_y());
    let spin_flipped = yy.matmul(&rho.matrix().conj()).matmul(&yy);

    // Eigenvalues of ρ·ρ̃ via the Hermitian product √ρ·ρ̃·√ρ, which shares
    // its nonzero spectrum.  Eigenvalues within relative 1e-14 of zero are
    // numerical noise; taking their square roots would inflate that noise to
    // ~1e-8 (√ε), so they are clamped to exact zeros first.
    let clamp = |values: &[f64]| -> Vec<f64> {
        let floor = values.iter().cloned().fold(0.0, f64::max) * 1e-14;
        values.iter().map(|&v| if v > floor { v } else { 0.0 }).collect()
    };
    let eig = hermitian_eigensystem(rho.matrix())?;
    let lambda = clamp(&eig.values);
    let mut sqrt_rho = ComplexMatrix::zeros(4, 4);
    for (k, l) in lambda.iter().enumerate() {
        let v = eig.vector(k);
        sqrt_rho.add_scaled(&ComplexMatrix::outer(&v, &v), l.sqrt());
    }
    let h = sqrt_rho.matmul(&spin_flipped).matmul(&sqrt_rho);
    let mu = clamp(&hermitian_eigenvalues(&h)?);

    // Ascending μ: subtract the three smallest roots from the largest.
    let c = mu[3].sqrt() - mu[2].sqrt() - mu[1].sqrt() - mu[0].sqrt();
    Ok(c.max(0.0))
}

fn sigma_y() -> ComplexMatrix {
    let mut y = ComplexMatrix::zeros(2, 2);
    y[(0, 1)] = Complex64::new(0.0, -1.0);
    y[(1, 0)] = Complex64::new(0.0, 1.0);
    y
}

/// Parameters of the two-qubit family p·diag(q₁, q₂/2, q₂/2, q₃) +
/// (1−p)·|θ⟩⟨θ| with |θ⟩ = cos θ|00⟩ + sin θ|11⟩, whose robustness has a
/// closed form.
#[derive(Clone, Copy, Debug)]
pub struct DiagonalFamilyParams {
    p: f64,
    q: [f64; 3],
    theta: f64,
}

impl DiagonalFamilyParams {
    /// Validates p ∈ [0,1], qᵢ ≥ 0 with Σqᵢ = 1, θ ∈ [0, π/4].
    pub fn new(p: f64, q: [f64; 3], theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("mixing weight p must lie in [0,1], got {p}")));
        }
        if q.iter().any(|&x| x < 0.0) || (q.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "diagonal weights must be nonnegative and sum to 1, got {q:?}"
            )));
        }
        if !(0.0..=std::f64::consts::FRAC_PI_4 + 1e-12).contains(&theta) {
            return Err(Error::InvalidParameter(format!("theta must lie in [0, π/4], got {theta}")));
        }
        Ok(Self { p, q, theta })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> [f64; 3] {
        self.q
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Builds the family member as a density matrix.
    pub fn state(&self) -> DensityMatrix {
        let (cos, sin) = (self.theta.cos(), self.theta.sin());
        let (p, q) = (self.p, self.q);
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(0, 0)] = Complex64::new(p * q[0] + (1.0 - p) * cos * cos, 0.0);
        m[(1, 1)] = Complex64::new(p * q[1] / 2.0, 0.0);
        m[(2, 2)] = Complex64::new(p * q[1] / 2.0, 0.0);
        m[(3, 3)] = Complex64::new(p * q[2] + (1.0 - p) * sin * sin, 0.0);
        m[(0, 3)] = Complex64::new((1.0 - p) * cos * sin, 0.0);
        m[(3, 0)] = m[(0, 3)];
        DensityMatrix::new(PartyStructure::bipartite(2, 2).expect("2,2 is valid"), m)
            .expect("family members are valid states by construction")
    }
}

/// Closed-form robustness of the diagonal family: 0 if the partial transpose
/// is positive, else (1−p)·sin 2θ − p·q₂.
pub fn diagonal_family_robustness(params: &DiagonalFamilyParams) -> f64 {
    let value = (1.0 - params.p) * (2.0 * params.theta).sin() - params.p * params.q[1];
    // The partial transpose is positive exactly when the off-diagonal
    // coupling (1−p)·cos θ sin θ stays within the p·q₂/2 diagonal floor,
    // i.e. when the closed form is nonpositive.
    value.max(0.0)
}

/// A Werner state, parametrized by its fidelity F = ⟨Φ⁺|ρ|Φ⁺⟩ with the
/// maximally entangled reference state Φ⁺ = (|00⟩+|11⟩)/√2.
#[derive(Clone, Copy, Debug)]
pub struct WernerParams {
    fidelity: f64,
}

impl WernerParams {
    /// Validates F ∈ [1/4, 1].
    pub fn new(fidelity: f64) -> Result<Self> {
        if !(0.25..=1.0).contains(&fidelity) {
            return Err(Error::InvalidParameter(format!(
                "Werner fidelity must lie in [1/4, 1], got {fidelity}"
            )));
        }
        Ok(Self { fidelity })
    }

    pub fn fidelity(&self) -> f64 {
        self.fidelity
    }

    /// Builds F·|Φ⁺⟩⟨Φ⁺| + (1−F)·(I − |Φ⁺⟩⟨Φ⁺|)/3.
    pub fn state(&self) -> DensityMatrix {
        let f = self.fidelity;
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let phi = [
            Complex64::new(r, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(r, 0.0),
        ];
        let proj = ComplexMatrix::outer(&phi, &phi);
        let mut m = ComplexMatrix::identity(4).sub(&proj).scale((1.0 - f) / 3.0);
        m.add_scaled(&proj, f);
        DensityMatrix::new(PartyStructure::bipartite(2, 2).expect("2,2 is valid"), m)
            .expect("Werner states are valid for F ∈ [1/4, 1]")
    }
}

/// Closed-form robustness of a Werner state: max(0, 2F − 1).
pub fn werner_robustness(params: &WernerParams) -> f64 {
    (2.0 * params.fidelity - 1.0).max(0.0)
}

/// Bounds on the robustness relative to the maximally mixed state:
/// n·|min(λ, 0)| ≤ R(ρ ‖ I/n) ≤ n/2, with λ the smallest eigenvalue of
/// ρ^(T_B).  For n ≤ 6 the lower bound is exact and the interval collapses.
pub fn random_robustness_bounds(rho: &DensityMatrix) -> Result<RobustnessInterval> {
    let structure = rho.structure();
    if !structure.is_bipartite() {
        return Err(Error::NotBipartite { parties: structure.party_count() });
    }
    let n = rho.dim();
    let pt = partial_transpose(rho, 1)?;
    let min = hermitian_eigenvalues(&pt)?[0];
    let lower = n as f64 * (-min).max(0.0);
    if n <= 6 {
        Ok(RobustnessInterval {
            lower,
            upper: lower,
            lower_source: BoundSource::Exact,
            upper_source: BoundSource::Exact,
        })
    } else {
        Ok(RobustnessInterval {
            lower,
            upper: n as f64 / 2.0,
            lower_source: BoundSource::MinEigenvalue,
            upper_source: BoundSource::DimensionCeiling,
        })
    }
}

/// Upper bound on the random robustness of an N-party state on an
/// n-dimensional space: (1 + n/2)^(N−1) − 1.
///
/// For N = 2 this reduces to n/2.  It feeds the separable-volume bound: any
/// state mixed with maximally mixed noise at this weight turns separable.
pub fn random_robustness_nparty_bound(n: usize, parties: usize) -> f64 {
    assert!(n >= 2 && parties >= 2, "needs a composite system (n ≥ 2, N ≥ 2)");
    (1.0 + n as f64 / 2.0).powi(parties as i32 - 1) - 1.0
}

/// Expectation Tr[ρM] of the antisymmetric witness M = Σ_{i<j} P_ij, where
/// P_ij projects onto (|ij⟩−|ji⟩)/√2.
///
/// Separable states satisfy Tr[ρM] ≤ 1/2, so any larger value certifies
/// entanglement.  Defined for equal local dimensions.
pub fn antisymmetric_witness_value(rho: &DensityMatrix) -> Result<f64> {
    let dims = rho.structure().dims();
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(Error::UnsupportedDimension(format!(
            "the antisymmetric witness needs two parties of equal dimension, got {dims:?}"
        )));
    }
    let m = dims[0];
    let flat = |i: usize, j: usize| i * m + j;
    let mat = rho.matrix();
    let mut value = 0.0;
    for i in 0..m {
        for j in (i + 1)..m {
            let (ij, ji) = (flat(i, j), flat(j, i));
            value += 0.5
                * (mat[(ij, ij)].re + mat[(ji, ji)].re
                    - mat[(ij, ji)].re
                    - mat[(ji, ij)].re);
        }
    }
    Ok(value)
}

/// Intersection of every applicable bound: the tightest certified bracket
/// for the robustness of a bipartite mixed state, with provenance tags.
///
/// Lower candidates: the negativity bound, and the two-qubit eigenvector
/// bound where it applies.  Upper candidates: the two support bounds, and
/// for two qubits the eigenvector bound and the concurrence.
pub fn combined_interval(rho: &DensityMatrix) -> Result<RobustnessInterval> {
    let structure = rho.structure();
    if !structure.is_bipartite() {
        return Err(Error::NotBipartite { parties: structure.party_count() });
    }

    let spectrum = partial_transpose_spectrum(rho)?;
    let entangled = spectrum.eigenvalues[0] < tol::PSD_MIN_EIGENVALUE;

    let mut lower = (negativity_lower_bound(&spectrum), BoundSource::Negativity);
    let (rank_bound, restricted_bound, is_ceiling) = support_bound_parts(rho)?;
    let restricted_source = if is_ceiling {
        BoundSource::DimensionCeiling
    } else {
        BoundSource::SupportRandomRobustness
    };
    let mut upper = (rank_bound, BoundSource::SupportRank);
    if restricted_bound < upper.0 {
        upper = (restricted_bound, restricted_source);
    }

    if rho.dim() == 4 && entangled {
        let eigvec = two_qubit_interval(rho)?;
        if eigvec.lower > lower.0 {
            lower = (eigvec.lower, BoundSource::EigenvectorAngle);
        }
        if eigvec.upper < upper.0 {
            upper = (eigvec.upper, BoundSource::EigenvectorAngle);
        }
        let c = concurrence(rho)?;
        if c < upper.0 {
            upper = (c, BoundSource::Concurrence);
        }
    }

    if lower.0 > upper.0 + 1e-9 {
        return Err(Error::InconsistentBounds { lower: lower.0, upper: upper.0 });
    }
    Ok(RobustnessInterval {
        lower: lower.0.min(upper.0),
        upper: upper.0,
        lower_source: lower.1,
        upper_source: upper.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pure::optimal_pseudomixture;
    use crate::state::{partial_trace, PureState};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn schmidt_state(coefficients: &[f64], n1: usize, n2: usize) -> PureState {
        let mut v = vec![c(0.0, 0.0); n1 * n2];
        for (i, &a) in coefficients.iter().enumerate() {
            v[i * n2 + i] = c(a, 0.0);
        }
        PureState::new(PartyStructure::bipartite(n1, n2).unwrap(), v).unwrap()
    }

    fn singlet() -> DensityMatrix {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::from_pure(&schmidt_state(&[r, r], 2, 2))
    }

    fn random_two_qubit(rng: &mut impl Rng) -> DensityMatrix {
        let g = ComplexMatrix::from_fn(4, 4, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        let w = g.matmul(&g.adjoint());
        let m = w.scale(1.0 / w.trace().re);
        DensityMatrix::new(PartyStructure::bipartite(2, 2).unwrap(), m).unwrap()
    }

    #[test]
    fn negativity_bound_saturates_on_maximally_entangled_states() {
        let spec = partial_transpose_spectrum(&singlet()).unwrap();
        assert_abs_diff_eq!(negativity_lower_bound(&spec), 1.0, epsilon = 1e-10);

        let w = WernerParams::new(1.0).unwrap().state();
        let spec = partial_transpose_spectrum(&w).unwrap();
        assert_abs_diff_eq!(negativity_lower_bound(&spec), 1.0, epsilon = 1e-10);

        let mixed = DensityMatrix::maximally_mixed(PartyStructure::bipartite(2, 2).unwrap());
        let spec = partial_transpose_spectrum(&mixed).unwrap();
        assert_eq!(negativity_lower_bound(&spec), 0.0);
    }

    #[test]
    fn support_bound_examples() {
        // Entangled two-qubit: m̃ − 1 = 1 caps the bound.
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let rho = random_two_qubit(&mut rng);
            assert!(support_upper_bound(&rho).unwrap() <= 1.0 + 1e-12);
        }

        // Singlet embedded in [3,3]: support restricts to [2,2],
        // min(m̃ − 1, ñ|λ|) = min(1, 2) = 1.
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DensityMatrix::from_pure(&schmidt_state(&[r, r], 3, 3));
        assert_abs_diff_eq!(support_upper_bound(&rho).unwrap(), 1.0, epsilon = 1e-10);

        // Separable: the restricted state stays PPT, so the bound is 0.
        let mixed = DensityMatrix::maximally_mixed(PartyStructure::bipartite(2, 2).unwrap());
        assert_abs_diff_eq!(support_upper_bound(&mixed).unwrap(), 0.0, epsilon = 1e-12);

        // Maximally entangled two-qutrit: min(2, 9·(1/3)) = 2.
        let s3 = 1.0 / 3.0f64.sqrt();
        let rho = DensityMatrix::from_pure(&schmidt_state(&[s3, s3, s3], 3, 3));
        assert_abs_diff_eq!(support_upper_bound(&rho).unwrap(), 2.0, epsilon = 1e-9);
    }

    #[test]
    fn two_qubit_interval_examples() {
        let i = two_qubit_interval(&singlet()).unwrap();
        assert_abs_diff_eq!(i.lower, 1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(i.upper, 1.0, epsilon = 1e-10);

        let w = WernerParams::new(0.75).unwrap().state();
        let i = two_qubit_interval(&w).unwrap();
        assert_abs_diff_eq!(i.lower, 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(i.upper, 0.5, epsilon = 1e-10);
        assert_eq!(i.lower_source, BoundSource::EigenvectorAngle);

        // Pure state at θ = π/8: the bracket contains (a₁+a₂)² − 1.
        let theta = std::f64::consts::FRAC_PI_8;
        let rho = DensityMatrix::from_pure(&schmidt_state(&[theta.cos(), theta.sin()], 2, 2));
        let r = (2.0 * theta).sin();
        let i = two_qubit_interval(&rho).unwrap();
        assert!(i.lower <= r + 1e-10 && r <= i.upper + 1e-10);

        let mixed = DensityMatrix::maximally_mixed(PartyStructure::bipartite(2, 2).unwrap());
        assert!(matches!(two_qubit_interval(&mixed), Err(Error::NotEntangled)));
        let big = DensityMatrix::maximally_mixed(PartyStructure::bipartite(2, 3).unwrap());
        assert!(matches!(two_qubit_interval(&big), Err(Error::UnsupportedDimension(_))));
    }

    #[test]
    fn concurrence_examples() {
        assert_abs_diff_eq!(concurrence(&singlet()).unwrap(), 1.0, epsilon = 1e-10);

        let s = PartyStructure::bipartite(2, 2).unwrap();
        let product = DensityMatrix::from_pure(&PureState::basis_state(s, &[0, 0]));
        assert_abs_diff_eq!(concurrence(&product).unwrap(), 0.0, epsilon = 1e-10);

        let w = WernerParams::new(0.75).unwrap().state();
        assert_abs_diff_eq!(concurrence(&w).unwrap(), 0.5, epsilon = 1e-10);
    }

    #[test]
    fn concurrence_equals_robustness_on_pure_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..50 {
            let theta = rng.gen::<f64>() * std::f64::consts::FRAC_PI_4;
            let rho = DensityMatrix::from_pure(&schmidt_state(&[theta.cos(), theta.sin()], 2, 2));
            assert_abs_diff_eq!(concurrence(&rho).unwrap(), (2.0 * theta).sin(), epsilon = 1e-9);
        }
    }

    #[test]
    fn diagonal_family_closed_form() {
        // Pure singlet limit.
        let p0 = DiagonalFamilyParams::new(0.0, [0.25, 0.5, 0.25], std::f64::consts::FRAC_PI_4)
            .unwrap();
        assert_abs_diff_eq!(diagonal_family_robustness(&p0), 1.0, epsilon = 1e-12);

        // Worked example: 0.5·1 − 0.5·0.5 = 0.25.
        let p = DiagonalFamilyParams::new(0.5, [0.25, 0.5, 0.25], std::f64::consts::FRAC_PI_4)
            .unwrap();
        assert_abs_diff_eq!(diagonal_family_robustness(&p), 0.25, epsilon = 1e-12);

        // A positive partial transpose forces 0.
        let sep = DiagonalFamilyParams::new(0.9, [0.25, 0.5, 0.25], 0.1).unwrap();
        assert_eq!(diagonal_family_robustness(&sep), 0.0);
        assert!(crate::sep::is_separable_small(&sep.state()).unwrap().separable);
    }

    #[test]
    fn diagonal_family_matches_eigenvector_bound_collapse() {
        // The family's negative eigenvector is (|01⟩−|10⟩)/√2, which is
        // maximally entangled, so the two-qubit bracket collapses onto the
        // closed form for every entangled member.
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let mut seen = 0;
        while seen < 25 {
            let p = rng.gen::<f64>();
            let (a, b) = (rng.gen::<f64>(), rng.gen::<f64>());
            let (a, b) = (a.min(b), a.max(b));
            let q = [a, b - a, 1.0 - b];
            let theta = rng.gen::<f64>() * std::f64::consts::FRAC_PI_4;
            let params = DiagonalFamilyParams::new(p, q, theta).unwrap();
            let value = diagonal_family_robustness(&params);
            if value < 1e-6 {
                continue;
            }
            seen += 1;
            let interval = two_qubit_interval(&params.state()).unwrap();
            assert!(interval.upper - interval.lower < 1e-8);
            assert_abs_diff_eq!(interval.upper, value, epsilon = 1e-9);
        }
    }

    #[test]
    fn werner_closed_form_and_family_membership() {
        assert_abs_diff_eq!(werner_robustness(&WernerParams::new(1.0).unwrap()), 1.0);
        assert_abs_diff_eq!(werner_robustness(&WernerParams::new(0.5).unwrap()), 0.0);
        assert_abs_diff_eq!(werner_robustness(&WernerParams::new(0.75).unwrap()), 0.5);

        // A Werner state IS the diagonal-family member with
        // q₁ = q₃ = q₂/2 = 1/4, θ = π/4, p = 4(1−F)/3 — same matrix, and the
        // closed forms agree exactly on the entangled range.
        for k in 0..=9 {
            let f = 0.55 + 0.05 * k as f64;
            let params =
                DiagonalFamilyParams::new(4.0 * (1.0 - f) / 3.0, [0.25, 0.5, 0.25], std::f64::consts::FRAC_PI_4)
                    .unwrap();
            let werner = WernerParams::new(f).unwrap();
            assert!(params.state().matrix().max_abs_diff(werner.state().matrix()) < 1e-12);
            assert_abs_diff_eq!(
                diagonal_family_robustness(&params),
                werner_robustness(&werner),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn random_robustness_bounds_examples() {
        let i = random_robustness_bounds(&singlet()).unwrap();
        assert_abs_diff_eq!(i.lower, 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(i.upper, 2.0, epsilon = 1e-10);
        assert_eq!(i.lower_source, BoundSource::Exact);

        let mixed = DensityMatrix::maximally_mixed(PartyStructure::bipartite(2, 2).unwrap());
        let i = random_robustness_bounds(&mixed).unwrap();
        assert_eq!((i.lower, i.upper), (0.0, 0.0));

        // [3,3] is beyond the exact range: interval with the n/2 cap.
        let s3 = 1.0 / 3.0f64.sqrt();
        let rho = DensityMatrix::from_pure(&schmidt_state(&[s3, s3, s3], 3, 3));
        let i = random_robustness_bounds(&rho).unwrap();
        assert_abs_diff_eq!(i.lower, 3.0, epsilon = 1e-9); // 9·(1/3)
        assert_abs_diff_eq!(i.upper, 4.5, epsilon = 1e-12);
        assert_eq!(i.lower_source, BoundSource::MinEigenvalue);
        assert_eq!(i.upper_source, BoundSource::DimensionCeiling);
    }

    #[test]
    fn nparty_bound_values() {
        assert_abs_diff_eq!(random_robustness_nparty_bound(4, 2), 2.0);
        assert_abs_diff_eq!(random_robustness_nparty_bound(8, 3), 24.0);
        assert_abs_diff_eq!(random_robustness_nparty_bound(16, 5), 6560.0);
    }

    #[test]
    fn witness_known_values() {
        for m in [2usize, 3, 4] {
            let s = PartyStructure::bipartite(m, m).unwrap();
            let mixed = DensityMatrix::maximally_mixed(s);
            assert_abs_diff_eq!(
                antisymmetric_witness_value(&mixed).unwrap(),
                (m as f64 - 1.0) / (2.0 * m as f64),
                epsilon = 1e-12
            );
        }

        // The antisymmetric Bell state is an eigenstate of the witness.
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let s = PartyStructure::bipartite(2, 2).unwrap();
        let psi = PureState::new(s, vec![c(0.0, 0.0), c(r, 0.0), c(-r, 0.0), c(0.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(
            antisymmetric_witness_value(&DensityMatrix::from_pure(&psi)).unwrap(),
            1.0,
            epsilon = 1e-12
        );

        let lopsided = DensityMatrix::maximally_mixed(PartyStructure::bipartite(2, 3).unwrap());
        assert!(matches!(
            antisymmetric_witness_value(&lopsided),
            Err(Error::UnsupportedDimension(_))
        ));
    }

    #[test]
    fn witness_is_sound_on_separable_mixtures() {
        // Convex mixtures of random product states never beat 1/2.
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for trial in 0..10_000 {
            let m = if trial % 2 == 0 { 2 } else { 3 };
            let s = PartyStructure::bipartite(m, m).unwrap();
            let terms = 1 + (trial % 4);
            let mut mix = ComplexMatrix::zeros(m * m, m * m);
            let mut weights: Vec<f64> = (0..terms).map(|_| rng.gen::<f64>() + 1e-3).collect();
            let total: f64 = weights.iter().sum();
            weights.iter_mut().for_each(|w| *w /= total);
            for &w in &weights {
                let a: Vec<Complex64> =
                    (0..m).map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
                let b: Vec<Complex64> =
                    (0..m).map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
                let prod = crate::mat::tensor(&a, &b);
                let norm = crate::mat::norm(&prod);
                let prod: Vec<Complex64> = prod.into_iter().map(|x| x / norm).collect();
                mix.add_scaled(&ComplexMatrix::outer(&prod, &prod), w);
            }
            let rho = DensityMatrix::new(s, mix).unwrap();
            assert!(antisymmetric_witness_value(&rho).unwrap() <= 0.5 + 1e-9);
        }
    }

    #[test]
    fn optimal_subtracted_state_saturates_the_witness() {
        // The subtracted state of the optimal pure-state pseudomixture sits
        // exactly on the witness boundary Tr[ρM] = 1/2 (in the Schmidt
        // basis, which for these states is the computational one).  Its
        // partial transpose leaves it unchanged, so the same holds there.
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for m in [2usize, 3] {
            for _ in 0..10 {
                let mut a: Vec<f64> = (0..m).map(|_| rng.gen::<f64>() + 0.1).collect();
                let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
                a.iter_mut().for_each(|x| *x /= norm);
                a.sort_by(|x, y| y.partial_cmp(x).unwrap());
                let psi = schmidt_state(&a, m, m);
                let pm = optimal_pseudomixture(&psi).unwrap();
                let minus_pt = partial_transpose(&pm.minus, 1).unwrap();
                let minus_pt = DensityMatrix::new(pm.minus.structure().clone(), minus_pt).unwrap();
                assert_abs_diff_eq!(
                    antisymmetric_witness_value(&minus_pt).unwrap(),
                    0.5,
                    epsilon = 1e-10
                );
            }
        }
    }

    #[test]
    fn combined_interval_examples() {
        let i = combined_interval(&singlet()).unwrap();
        assert_abs_diff_eq!(i.lower, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(i.upper, 1.0, epsilon = 1e-9);

        let mixed = DensityMatrix::maximally_mixed(PartyStructure::bipartite(2, 2).unwrap());
        let i = combined_interval(&mixed).unwrap();
        assert_eq!((i.lower, i.upper), (0.0, 0.0));

        let mut rng = ChaCha8Rng::seed_from_u64(36);
        for _ in 0..200 {
            let rho = random_two_qubit(&mut rng);
            let i = combined_interval(&rho).unwrap();
            assert!(0.0 <= i.lower && i.lower <= i.upper + 1e-12);
        }
    }

    #[test]
    fn combined_interval_brackets_pure_robustness() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..100 {
            let theta = rng.gen::<f64>() * std::f64::consts::FRAC_PI_4;
            let rho = DensityMatrix::from_pure(&schmidt_state(&[theta.cos(), theta.sin()], 2, 2));
            let r = (2.0 * theta).sin();
            let i = combined_interval(&rho).unwrap();
            assert!(i.lower <= r + 1e-9, "lower {} vs R {r}", i.lower);
            assert!(r <= i.upper + 1e-9, "upper {} vs R {r}", i.upper);
        }
    }

    #[test]
    fn interval_serialization_shape() {
        let i = combined_interval(&singlet()).unwrap();
        let json = serde_json::to_string(&i).unwrap();
        assert!(json.contains("\"lower\":"));
        assert!(json.contains("\"lower_source\":\""));
        let back: RobustnessInterval = serde_json::from_str(&json).unwrap();
        assert_eq!(back.lower.to_bits(), i.lower.to_bits());
    }

    #[test]
    fn reduced_states_stay_consistent_with_support_ranks() {
        // The support ranks come from the reduced states; check that route.
        let mut rng = ChaCha8Rng::seed_from_u64(38);
        for _ in 0..20 {
            let rho = random_two_qubit(&mut rng);
            let ra = partial_trace(&rho, &[0]).unwrap();
            let rb = partial_trace(&rho, &[1]).unwrap();
            assert_eq!(ra.dim(), 2);
            assert_eq!(rb.dim(), 2);
        }
    }
}
