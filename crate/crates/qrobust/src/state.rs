//! Multipartite structure, pure states, density matrices, and the partial
//! trace / partial transpose maps.
//!
//! # Index convention
//!
//! The product basis is flattened row-major with the **last party varying
//! fastest**: `|i₁ … i_N⟩` lives at `((i₁·n₂ + i₂)·n₃ + i₃)⋯`, so a bipartite
//! index is `i_A · n_B + i_B` and composites agree with `kron`.
//!
//! # Wire format
//!
//! States serialize to JSON as
//!
//! ```json
//! {"dims": [2, 2], "matrix": [[[re, im], …], …]}   // density matrix, row-major
//! {"dims": [2, 2], "vector": [[re, im], …]}        // pure state
//! ```
//!
//! with IEEE doubles in plain decimal notation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::eigen::hermitian_eigenvalues;
use crate::error::{Error, Result};
use crate::mat::ComplexMatrix;
use crate::tol;

/// The party dimensions of a multipartite system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PartyStructure {
    dims: Vec<usize>,
}

impl PartyStructure {
    /// Builds a structure from per-party dimensions (each ≥ 1, at least one
    /// party).
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidParameter("party structure needs at least one party".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidParameter("party dimensions must be at least 1".into()));
        }
        Ok(Self { dims })
    }

    /// Bipartite shorthand.
    pub fn bipartite(a: usize, b: usize) -> Result<Self> {
        Self::new(vec![a, b])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn party_count(&self) -> usize {
        self.dims.len()
    }

    /// Total Hilbert-space dimension (product of the party dimensions).
    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_bipartite(&self) -> bool {
        self.dims.len() == 2
    }

    /// Flat index of a product-basis multi-index (last party fastest).
    pub fn flatten(&self, multi: &[usize]) -> usize {
        debug_assert_eq!(multi.len(), self.dims.len());
        let mut idx = 0;
        for (&i, &d) in multi.iter().zip(&self.dims) {
            debug_assert!(i < d);
            idx = idx * d + i;
        }
        idx
    }

    /// Multi-index of a flat product-basis index.
    pub fn unflatten(&self, mut idx: usize) -> Vec<usize> {
        let mut multi = vec![0; self.dims.len()];
        for (slot, &d) in multi.iter_mut().zip(&self.dims).rev() {
            *slot = idx % d;
            idx /= d;
        }
        multi
    }
}

impl TryFrom<Vec<usize>> for PartyStructure {
    type Error = Error;

    fn try_from(dims: Vec<usize>) -> Result<Self> {
        Self::new(dims)
    }
}

impl From<PartyStructure> for Vec<usize> {
    fn from(s: PartyStructure) -> Vec<usize> {
        s.dims
    }
}

/// A normalized pure state on a multipartite system.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "PureStateWire", into = "PureStateWire")]
pub struct PureState {
    structure: PartyStructure,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates the amplitude vector: length must match the structure and
    /// the norm must be 1 within [`tol::NORM`].
    pub fn new(structure: PartyStructure, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != structure.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: structure.total_dim(),
                actual: amplitudes.len(),
            });
        }
        let norm = crate::mat::norm(&amplitudes);
        if (norm - 1.0).abs() > tol::NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { structure, amplitudes })
    }

    /// Normalizes an arbitrary nonzero amplitude vector.
    pub fn normalized(structure: PartyStructure, amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = crate::mat::norm(&amplitudes);
        if norm == 0.0 {
            return Err(Error::NotNormalized { norm });
        }
        let scaled = amplitudes.iter().map(|a| a / norm).collect();
        Self::new(structure, scaled)
    }

    /// The product-basis state |i₁ … i_N⟩.
    pub fn basis_state(structure: PartyStructure, multi: &[usize]) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); structure.total_dim()];
        amplitudes[structure.flatten(multi)] = Complex64::new(1.0, 0.0);
        Self { structure, amplitudes }
    }

    pub fn structure(&self) -> &PartyStructure {
        &self.structure
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }
}

/// A density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "DensityMatrixWire", into = "DensityMatrixWire")]
pub struct DensityMatrix {
    structure: PartyStructure,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity (within [`tol::HERMITICITY`]), positivity
    /// (minimum eigenvalue ≥ [`tol::PSD_MIN_EIGENVALUE`]) and unit trace
    /// (within [`tol::TRACE`]).
    pub fn new(structure: PartyStructure, matrix: ComplexMatrix) -> Result<Self> {
        let n = structure.total_dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: matrix.rows() });
        }
        let defect = matrix.hermiticity_defect();
        if defect > tol::HERMITICITY {
            return Err(Error::NotHermitian { max_asymmetry: defect });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > tol::TRACE {
            return Err(Error::TraceNotOne { trace });
        }
        let min = hermitian_eigenvalues(&matrix)?[0];
        if min < tol::PSD_MIN_EIGENVALUE {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min });
        }
        Ok(Self { structure, matrix })
    }

    /// Builds a density matrix that is valid by construction, skipping the
    /// eigenvalue check (used internally where positivity is guaranteed).
    pub(crate) fn new_unchecked(structure: PartyStructure, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(matrix.rows(), structure.total_dim());
        Self { structure, matrix }
    }

    /// The projector |ψ⟩⟨ψ| of a pure state.
    pub fn from_pure(psi: &PureState) -> Self {
        let matrix = ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes());
        Self::new_unchecked(psi.structure().clone(), matrix)
    }

    /// The maximally mixed state I/n.
    pub fn maximally_mixed(structure: PartyStructure) -> Self {
        let n = structure.total_dim();
        let matrix = ComplexMatrix::identity(n).scale(1.0 / n as f64);
        Self::new_unchecked(structure, matrix)
    }

    pub fn structure(&self) -> &PartyStructure {
        &self.structure
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.structure.total_dim()
    }
}

/// Traces out every party *not* listed in `keep`.
///
/// `keep` is a set of party indices (0-based); the reduced state keeps those
/// parties in ascending order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let dims = rho.structure().dims();
    let parties = dims.len();

    let mut keep = keep.to_vec();
    keep.sort_unstable();
    if keep.is_empty() {
        return Err(Error::BadPartition("must keep at least one party".into()));
    }
    if keep.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadPartition("duplicate party index".into()));
    }
    if *keep.last().unwrap() >= parties {
        return Err(Error::BadPartition(format!(
            "party index {} out of range for {} parties",
            keep.last().unwrap(),
            parties
        )));
    }

    let traced: Vec<usize> = (0..parties).filter(|p| !keep.contains(p)).collect();

    // Strides of each party in the flat index (last party fastest).
    let mut stride = vec![1usize; parties];
    for p in (0..parties.saturating_sub(1)).rev() {
        stride[p] = stride[p + 1] * dims[p + 1];
    }

    let kept_structure = PartyStructure::new(keep.iter().map(|&p| dims[p]).collect())?;
    let kept_dim = kept_structure.total_dim();
    let traced_dim: usize = traced.iter().map(|&p| dims[p]).product();

    // Flat offset of a multi-index confined to `parties_subset`.
    let offset = |subset: &[usize], mut combined: usize| -> usize {
        let mut off = 0;
        for &p in subset.iter().rev() {
            off += (combined % dims[p]) * stride[p];
            combined /= dims[p];
        }
        off
    };

    let src = rho.matrix();
    let n = rho.dim();
    let mut out = ComplexMatrix::zeros(kept_dim, kept_dim);
    for row in 0..kept_dim {
        let row_off = offset(&keep, row);
        for col in 0..kept_dim {
            let col_off = offset(&keep, col);
            let mut sum = Complex64::new(0.0, 0.0);
            for t in 0..traced_dim {
                let t_off = offset(&traced, t);
                sum += src.entries()[(row_off + t_off) * n + (col_off + t_off)];
            }
            out[(row, col)] = sum;
        }
    }
    DensityMatrix::new(kept_structure, out)
}

/// Transposes the indices of one party, leaving the rest untouched.
///
/// The result is Hermitian with unit trace but need not be positive, so it is
/// returned as a plain matrix.
pub fn partial_transpose(rho: &DensityMatrix, party: usize) -> Result<ComplexMatrix> {
    let dims = rho.structure().dims();
    if party >= dims.len() {
        return Err(Error::BadPartition(format!(
            "party index {party} out of range for {} parties",
            dims.len()
        )));
    }

    let n = rho.dim();
    // Bipartite fast path for the common case (transpose the second party).
    if dims.len() == 2 && party == 1 {
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        pt_second_party(rho.matrix().entries(), dims[0], dims[1], &mut out);
        return ComplexMatrix::new(n, n, out);
    }

    let structure = rho.structure();
    let src = rho.matrix();
    let mut out = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        let mut mr = structure.unflatten(r);
        for c in 0..n {
            let mut mc = structure.unflatten(c);
            std::mem::swap(&mut mr[party], &mut mc[party]);
            let (r2, c2) = (structure.flatten(&mr), structure.flatten(&mc));
            std::mem::swap(&mut mr[party], &mut mc[party]);
            out[(r2, c2)] = src[(r, c)];
        }
    }
    Ok(out)
}

/// Bipartite partial transpose of the second party on raw row-major storage:
/// out[(i,l),(k,j)] = src[(i,j),(k,l)].
pub(crate) fn pt_second_party(src: &[Complex64], n1: usize, n2: usize, out: &mut [Complex64]) {
    let n = n1 * n2;
    debug_assert_eq!(src.len(), n * n);
    debug_assert_eq!(out.len(), n * n);
    for i in 0..n1 {
        for j in 0..n2 {
            let row = i * n2 + j;
            for k in 0..n1 {
                for l in 0..n2 {
                    let col = k * n2 + l;
                    out[(i * n2 + l) * n + (k * n2 + j)] = src[row * n + col];
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Wire formats.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct PureStateWire {
    dims: Vec<usize>,
    vector: Vec<[f64; 2]>,
}

impl TryFrom<PureStateWire> for PureState {
    type Error = Error;

    fn try_from(w: PureStateWire) -> Result<Self> {
        let structure = PartyStructure::new(w.dims)?;
        let amplitudes = w.vector.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
        PureState::new(structure, amplitudes)
    }
}

impl From<PureState> for PureStateWire {
    fn from(s: PureState) -> Self {
        PureStateWire {
            dims: s.structure.dims.clone(),
            vector: s.amplitudes.iter().map(|a| [a.re, a.im]).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct DensityMatrixWire {
    dims: Vec<usize>,
    matrix: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<DensityMatrixWire> for DensityMatrix {
    type Error = Error;

    fn try_from(w: DensityMatrixWire) -> Result<Self> {
        let structure = PartyStructure::new(w.dims)?;
        let n = structure.total_dim();
        if w.matrix.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: w.matrix.len() });
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in &w.matrix {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: row.len() });
            }
            entries.extend(row.iter().map(|&[re, im]| Complex64::new(re, im)));
        }
        DensityMatrix::new(structure, ComplexMatrix::new(n, n, entries)?)
    }
}

impl From<DensityMatrix> for DensityMatrixWire {
    fn from(d: DensityMatrix) -> Self {
        let n = d.dim();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| [d.matrix[(i, j)].re, d.matrix[(i, j)].im]).collect())
            .collect();
        DensityMatrixWire { dims: d.structure.dims.clone(), matrix }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    pub(crate) fn singlet() -> PureState {
        let s = PartyStructure::bipartite(2, 2).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(s, vec![c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(r, 0.0)]).unwrap()
    }

    #[test]
    fn flat_index_has_last_party_fastest() {
        let s = PartyStructure::new(vec![2, 3]).unwrap();
        assert_eq!(s.flatten(&[1, 0]), 3);
        assert_eq!(s.flatten(&[0, 2]), 2);
        assert_eq!(s.unflatten(4), vec![1, 1]);

        let t = PartyStructure::new(vec![2, 2, 2]).unwrap();
        assert_eq!(t.flatten(&[1, 0, 1]), 5);
    }

    #[test]
    fn density_matrix_validation_rejects_bad_inputs() {
        let s = PartyStructure::bipartite(2, 2).unwrap();

        // Non-Hermitian.
        let mut m = ComplexMatrix::identity(4).scale(0.25);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(
            DensityMatrix::new(s.clone(), m),
            Err(Error::NotHermitian { .. })
        ));

        // Negative eigenvalue.
        let mut m = ComplexMatrix::identity(4).scale(0.5);
        m[(0, 0)] = c(-0.5, 0.0);
        assert!(matches!(
            DensityMatrix::new(s.clone(), m),
            Err(Error::NotPositiveSemidefinite { .. })
        ));

        // Trace off.
        let m = ComplexMatrix::identity(4).scale(0.3);
        assert!(matches!(
            DensityMatrix::new(s.clone(), m),
            Err(Error::TraceNotOne { .. })
        ));

        // Wrong size.
        let m = ComplexMatrix::identity(3).scale(1.0 / 3.0);
        assert!(matches!(
            DensityMatrix::new(s, m),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pure_state_norm_is_enforced() {
        let s = PartyStructure::bipartite(2, 2).unwrap();
        let bad = PureState::new(s.clone(), vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(bad, Err(Error::NotNormalized { .. })));
        let fixed = PureState::normalized(s, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_abs_diff_eq!(crate::mat::norm(fixed.amplitudes()), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn partial_trace_of_singlet_is_maximally_mixed() {
        let rho = DensityMatrix::from_pure(&singlet());
        for keep in [0usize, 1] {
            let reduced = partial_trace(&rho, &[keep]).unwrap();
            assert_eq!(reduced.dim(), 2);
            let expected = ComplexMatrix::identity(2).scale(0.5);
            assert!(reduced.matrix().max_abs_diff(&expected) < 1e-14);
        }
    }

    #[test]
    fn partial_trace_of_product_recovers_factors() {
        let s = PartyStructure::bipartite(2, 3).unwrap();
        let a = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => c(0.7, 0.0),
            (1, 1) => c(0.3, 0.0),
            (0, 1) => c(0.1, 0.2),
            (1, 0) => c(0.1, -0.2),
            _ => unreachable!(),
        });
        let mut b = ComplexMatrix::zeros(3, 3);
        b[(0, 0)] = c(0.5, 0.0);
        b[(1, 1)] = c(0.25, 0.0);
        b[(2, 2)] = c(0.25, 0.0);
        b[(0, 1)] = c(0.0, 0.1);
        b[(1, 0)] = c(0.0, -0.1);
        let rho = DensityMatrix::new(s, a.kron(&b)).unwrap();

        let ra = partial_trace(&rho, &[0]).unwrap();
        assert!(ra.matrix().max_abs_diff(&a) < 1e-12);
        let rb = partial_trace(&rho, &[1]).unwrap();
        assert!(rb.matrix().max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn partial_trace_matches_naive_index_summation() {
        // Independent check of the stride bookkeeping on [2, 2]: trace out
        // party B by direct summation over its index.
        let rho = {
            let s = PartyStructure::bipartite(2, 2).unwrap();
            let psi = PureState::normalized(
                s,
                vec![c(0.3, 0.1), c(-0.2, 0.4), c(0.5, 0.0), c(0.1, -0.6)],
            )
            .unwrap();
            DensityMatrix::from_pure(&psi)
        };
        let reduced = partial_trace(&rho, &[0]).unwrap();
        let m = rho.matrix();
        for i in 0..2 {
            for k in 0..2 {
                let mut expect = c(0.0, 0.0);
                for j in 0..2 {
                    expect += m[(i * 2 + j, k * 2 + j)];
                }
                assert!((reduced.matrix()[(i, k)] - expect).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn partial_trace_rejects_bad_partitions() {
        let rho = DensityMatrix::from_pure(&singlet());
        assert!(matches!(partial_trace(&rho, &[]), Err(Error::BadPartition(_))));
        assert!(matches!(partial_trace(&rho, &[2]), Err(Error::BadPartition(_))));
        assert!(matches!(partial_trace(&rho, &[0, 0]), Err(Error::BadPartition(_))));
    }

    #[test]
    fn singlet_partial_transpose_has_known_entries() {
        let rho = DensityMatrix::from_pure(&singlet());
        let pt = partial_transpose(&rho, 1).unwrap();
        let mut expected = ComplexMatrix::zeros(4, 4);
        expected[(0, 0)] = c(0.5, 0.0);
        expected[(3, 3)] = c(0.5, 0.0);
        expected[(1, 2)] = c(0.5, 0.0);
        expected[(2, 1)] = c(0.5, 0.0);
        assert!(pt.max_abs_diff(&expected) < 1e-15);

        let spectrum = crate::eigen::hermitian_eigenvalues(&pt).unwrap();
        assert_abs_diff_eq!(spectrum[0], -0.5, epsilon = 1e-12);
        for v in &spectrum[1..] {
            assert_abs_diff_eq!(*v, 0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn partial_transpose_is_a_bitwise_involution() {
        let rho = {
            let s = PartyStructure::bipartite(2, 3).unwrap();
            let psi = PureState::normalized(
                s,
                vec![c(0.3, 0.1), c(-0.2, 0.4), c(0.5, 0.0), c(0.1, -0.6), c(0.2, 0.2), c(0.0, 0.3)],
            )
            .unwrap();
            DensityMatrix::from_pure(&psi)
        };
        let once = partial_transpose(&rho, 1).unwrap();
        let back = {
            let tmp = DensityMatrix::new_unchecked(rho.structure().clone(), once.clone());
            partial_transpose(&tmp, 1).unwrap()
        };
        // Pure entry permutation: bit-level equality, not approximate.
        assert_eq!(back.entries(), rho.matrix().entries());

        // Hermitian with unit trace.
        assert_eq!(once.hermiticity_defect(), 0.0);
        assert_abs_diff_eq!(once.trace().re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn both_party_transposes_share_a_spectrum() {
        let rho = {
            let s = PartyStructure::bipartite(2, 2).unwrap();
            let psi = PureState::normalized(s, vec![c(0.9, 0.0), c(0.1, 0.2), c(0.0, -0.3), c(0.2, 0.0)]).unwrap();
            DensityMatrix::from_pure(&psi)
        };
        let sa = crate::eigen::hermitian_eigenvalues(&partial_transpose(&rho, 0).unwrap()).unwrap();
        let sb = crate::eigen::hermitian_eigenvalues(&partial_transpose(&rho, 1).unwrap()).unwrap();
        for (a, b) in sa.iter().zip(&sb) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-12);
        }
    }

    #[test]
    fn product_state_partial_transpose_stays_positive() {
        let s = PartyStructure::bipartite(2, 2).unwrap();
        let a = vec![c(0.6, 0.0), c(0.0, 0.8)];
        let b = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let psi = PureState::new(s, crate::mat::tensor(&a, &b)).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        let pt = partial_transpose(&rho, 1).unwrap();
        let min = crate::eigen::hermitian_eigenvalues(&pt).unwrap()[0];
        assert!(min > -1e-12);
    }

    #[test]
    fn density_matrix_json_golden_shape() {
        let s = PartyStructure::new(vec![2]).unwrap();
        let m = ComplexMatrix::identity(2).scale(0.5);
        let rho = DensityMatrix::new(s, m).unwrap();
        let json = serde_json::to_string(&rho).unwrap();
        assert_eq!(
            json,
            r#"{"dims":[2],"matrix":[[[0.5,0.0],[0.0,0.0]],[[0.0,0.0],[0.5,0.0]]]}"#
        );
    }

    #[test]
    fn pure_state_json_roundtrip_is_bit_identical() {
        let psi = singlet();
        let json = serde_json::to_string(&psi).unwrap();
        let back: PureState = serde_json::from_str(&json).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(back.amplitudes()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
        assert_eq!(psi.structure(), back.structure());
    }

    #[test]
    fn density_matrix_json_roundtrip_is_bit_identical() {
        let s = PartyStructure::bipartite(2, 2).unwrap();
        let psi = PureState::normalized(
            s,
            vec![c(0.3, 0.1), c(-0.2, 0.4), c(0.5, 0.0), c(0.1, -0.6)],
        )
        .unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        let json = serde_json::to_string(&rho).unwrap();
        let back: DensityMatrix = serde_json::from_str(&json).unwrap();
        for (a, b) in rho.matrix().entries().iter().zip(back.matrix().entries()) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn malformed_json_is_rejected() {
        // Vector that is not normalized.
        let bad: std::result::Result<PureState, _> =
            serde_json::from_str(r#"{"dims":[2],"vector":[[1.0,0.0],[1.0,0.0]]}"#);
        assert!(bad.is_err());

        // Matrix with a short row.
        let bad: std::result::Result<DensityMatrix, _> =
            serde_json::from_str(r#"{"dims":[2],"matrix":[[[1.0,0.0]],[[0.0,0.0],[0.0,0.0]]]}"#);
        assert!(bad.is_err());
    }
}
