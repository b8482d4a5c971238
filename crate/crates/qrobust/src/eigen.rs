//! Hermitian eigendecomposition via cyclic Jacobi rotations.
//!
//! The matrices in this crate are at most ~16×16, where Jacobi is simple,
//! numerically excellent (eigenvectors orthonormal to machine precision) and
//! plenty fast, so no external linear-algebra backend is used.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mat::ComplexMatrix;
use crate::tol;

/// Eigenvalues (ascending) and matching orthonormal eigenvectors of a
/// Hermitian matrix.  Column `k` of `vectors` belongs to `values[k]`.
#[derive(Clone, Debug)]
pub struct Eigensystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl Eigensystem {
    /// Eigenvector `k` as an owned vector.
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when the input deviates from M = M†
/// beyond [`tol::HERMITICITY`].  Eigenvalues are returned in ascending order.
pub fn hermitian_eigensystem(m: &ComplexMatrix) -> Result<Eigensystem> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), actual: m.cols() });
    }
    let defect = m.hermiticity_defect();
    if defect > tol::HERMITICITY {
        return Err(Error::NotHermitian { max_asymmetry: defect });
    }

    let n = m.rows();
    // Work on the exactly Hermitian average (M + M†)/2 so rounding asymmetry
    // in the input cannot leak into the iteration.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);

    let scale = a.frobenius_norm();
    if scale > 0.0 {
        let target = scale * 1e-15;
        for _sweep in 0..100 {
            if off_diagonal_norm(&a) <= target {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());

    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(Eigensystem { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigensystem(m).map(|e| e.values)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigenvalues(m)?[0])
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation annihilating the (p, q) entry of the Hermitian matrix
/// `a`, accumulated into `v`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= 1e-300 {
        return;
    }
    let phase = apq / r; // e^{iφ}
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    // Real Jacobi angle for the phase-aligned 2×2 block.
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Unitary: columns p, q mix as  |p⟩ → c|p⟩ − s·e^{−iφ}|q⟩,
    //                               |q⟩ → s|p⟩ + c·e^{−iφ}|q⟩.
    let n = a.rows();
    let phase_conj = phase.conj();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_kp = akp * c - akq * (phase_conj * s);
        let new_kq = akp * s + akq * (phase_conj * c);
        a[(k, p)] = new_kp;
        a[(p, k)] = new_kp.conj();
        a[(k, q)] = new_kq;
        a[(q, k)] = new_kq.conj();
    }
    a[(p, p)] = Complex64::new(app - t * r, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * r, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - vkq * (phase_conj * s);
        v[(k, q)] = vkp * s + vkq * (phase_conj * c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::inner;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_hermitian(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
        let g = ComplexMatrix::from_fn(n, n, |_, _| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
        g.add(&g.adjoint()).scale(0.5)
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = hermitian_eigensystem(&ComplexMatrix::identity(4)).unwrap();
        for v in &e.values {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn diagonal_matrix_sorted_ascending() {
        let m = ComplexMatrix::from_fn(2, 2, |i, j| {
            if i == j {
                c(if i == 0 { 0.75 } else { 0.25 }, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let e = hermitian_eigensystem(&m).unwrap();
        assert_abs_diff_eq!(e.values[0], 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(e.values[1], 0.75, epsilon = 1e-15);
        // Eigenvector of 0.25 is e₁.
        assert_abs_diff_eq!(e.vectors[(1, 0)].norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn known_complex_two_by_two() {
        // [[2, i], [−i, 2]] has eigenvalues 1 and 3.
        let m = ComplexMatrix::new(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        let e = hermitian_eigensystem(&m).unwrap();
        assert_abs_diff_eq!(e.values[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[1], 3.0, epsilon = 1e-14);
    }

    #[test]
    fn random_hermitian_reconstructs_and_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_hermitian(6, &mut rng);
            let e = hermitian_eigensystem(&m).unwrap();

            // Σ λ_k |v_k⟩⟨v_k| must reproduce the input.
            let mut recon = ComplexMatrix::zeros(6, 6);
            for k in 0..6 {
                let vk = e.vector(k);
                recon.add_scaled(&ComplexMatrix::outer(&vk, &vk), e.values[k]);
            }
            assert!(recon.max_abs_diff(&m) <= 1e-9 * m.frobenius_norm().max(1.0));

            // Orthonormal eigenvectors.
            for i in 0..6 {
                for j in 0..6 {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    let got = inner(&e.vector(i), &e.vector(j));
                    assert_abs_diff_eq!(got.norm(), expected, epsilon = 1e-12);
                }
            }

            // Residual per eigenpair.
            for k in 0..6 {
                let vk = e.vector(k);
                let mv = m.matvec(&vk);
                let worst = mv
                    .iter()
                    .zip(&vk)
                    .map(|(a, b)| (a - b * e.values[k]).norm())
                    .fold(0.0, f64::max);
                assert!(worst <= 1e-9 * m.frobenius_norm().max(1.0));
            }
        }
    }

    #[test]
    fn degenerate_spectrum_keeps_orthonormal_vectors() {
        // Projector onto a 2-dim subspace plus zero block: eigenvalues {0, 0, 1, 1}.
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(0, 0)] = c(1.0, 0.0);
        m[(1, 1)] = c(0.5, 0.0);
        m[(1, 2)] = c(0.0, 0.5);
        m[(2, 1)] = c(0.0, -0.5);
        m[(2, 2)] = c(0.5, 0.0);
        let e = hermitian_eigensystem(&m).unwrap();
        assert_abs_diff_eq!(e.values[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[2], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[3], 1.0, epsilon = 1e-14);
        for i in 0..4 {
            for j in (i + 1)..4 {
                assert!(inner(&e.vector(i), &e.vector(j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let m = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(
            hermitian_eigensystem(&m),
            Err(Error::NotHermitian { .. })
        ));
    }
}
