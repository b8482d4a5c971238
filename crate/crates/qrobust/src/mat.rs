//! Small dense complex matrices.
//!
//! Everything in this crate operates on systems with a handful of levels
//! (dimension ≤ ~16), so matrices are stored as plain row-major `Vec`s of
//! `Complex64` and all algorithms are the straightforward dense ones.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    /// Zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    /// Rank-one matrix |v⟩⟨w| (outer product with the second factor
    /// conjugated).
    pub fn outer(v: &[Complex64], w: &[Complex64]) -> Self {
        Self::from_fn(v.len(), w.len(), |i, j| v[i] * w[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.entries
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Sum of two matrices.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    /// Difference of two matrices.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    /// Real scalar multiple.
    pub fn scale(&self, factor: f64) -> Self {
        let entries = self.entries.iter().map(|a| a * factor).collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    /// `self += factor * other`, entry-wise.
    pub fn add_scaled(&mut self, other: &Self, factor: f64) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b * factor;
        }
    }

    /// Matrix product.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Conjugate transpose M†.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Entry-wise complex conjugate.
    pub fn conj(&self) -> Self {
        let entries = self.entries.iter().map(|a| a.conj()).collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    /// Trace.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// Largest entry-wise difference |self − other|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus of M − M†; zero for exactly Hermitian matrices.
    pub fn hermiticity_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Kronecker product `self ⊗ other`, with the right factor varying
    /// fastest (matching the crate-wide index convention).
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        Self::from_fn(rows, cols, |i, j| {
            let (ia, ib) = (i / other.rows, i % other.rows);
            let (ja, jb) = (j / other.cols, j % other.cols);
            self[(ia, ja)] * other[(ib, jb)]
        })
    }

    /// Determinant via LU decomposition with partial pivoting.
    pub fn det(&self) -> Complex64 {
        assert!(self.is_square());
        let mut lu = self.entries.clone();
        det_in_place(&mut lu, self.rows)
    }

    /// Whether `self + shift·I` admits a Cholesky factorization, i.e. whether
    /// the minimum eigenvalue exceeds `-shift`.  Only meaningful for
    /// (numerically) Hermitian input.
    pub fn is_psd_within(&self, shift: f64) -> bool {
        assert!(self.is_square());
        let mut buf = self.entries.clone();
        let n = self.rows;
        for i in 0..n {
            buf[i * n + i] += shift;
        }
        cholesky_succeeds(&mut buf, n)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[i * self.cols + j]
    }
}

/// Tensor product of two vectors, second factor varying fastest.
pub fn tensor(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Inner product ⟨a|b⟩ (first argument conjugated).
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Euclidean norm of a complex vector.
pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Samples a unitary from the Haar (uniform) distribution on U(n).
///
/// A complex Ginibre matrix (independent standard-normal real and imaginary
/// parts) is orthonormalized column by column with modified Gram–Schmidt.
/// The implicit R factor then has a real positive diagonal, which is exactly
/// the normalization that makes the Q factor Haar-distributed.
pub fn haar_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect()
        })
        .collect();
    for k in 0..n {
        let (done, rest) = cols.split_at_mut(k);
        let col = &mut rest[0];
        // Two passes keep the basis orthonormal to machine precision.
        for _ in 0..2 {
            for q in done.iter() {
                let overlap = inner(q, col);
                for (x, y) in col.iter_mut().zip(q) {
                    *x -= overlap * y;
                }
            }
        }
        let r = norm(col);
        debug_assert!(r > 1e-12, "Ginibre matrix was numerically singular");
        for x in col.iter_mut() {
            *x /= r;
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Extends an orthonormal set to a full orthonormal basis of C^dim.
///
/// Returns only the new vectors, chosen greedily from the computational
/// basis by largest residual (so the result is well conditioned regardless
/// of how the existing set is oriented).
pub(crate) fn orthonormal_completion(existing: &[Vec<Complex64>], dim: usize) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = existing.to_vec();
    let mut added = Vec::new();
    while basis.len() < dim {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for j in 0..dim {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            v[j] = Complex64::new(1.0, 0.0);
            for b in &basis {
                let overlap = inner(b, &v);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= overlap * y;
                }
            }
            let r = norm(&v);
            if best.as_ref().is_none_or(|(n, _)| r > *n) {
                best = Some((r, v));
            }
        }
        let (r, mut v) = best.expect("dim > 0");
        debug_assert!(r > 1e-8, "existing set was not a subset of an orthonormal basis");
        for x in &mut v {
            *x /= r;
        }
        basis.push(v.clone());
        added.push(v);
    }
    added
}

/// LU determinant on a scratch buffer (row-major, `n × n`).
pub(crate) fn det_in_place(a: &mut [Complex64], n: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for k in 0..n {
        // Partial pivoting.
        let mut pivot_row = k;
        let mut pivot_mag = a[k * n + k].norm_sqr();
        for r in (k + 1)..n {
            let mag = a[r * n + k].norm_sqr();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = r;
            }
        }
        if pivot_mag == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot_row != k {
            for c in 0..n {
                a.swap(k * n + c, pivot_row * n + c);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for r in (k + 1)..n {
            let factor = a[r * n + k] / pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for c in (k + 1)..n {
                let sub = factor * a[k * n + c];
                a[r * n + c] -= sub;
            }
        }
    }
    det
}

/// In-place Cholesky test: returns true iff the Hermitian matrix in `a`
/// (row-major, destroyed) is positive definite.
pub(crate) fn cholesky_succeeds(a: &mut [Complex64], n: usize) -> bool {
    for j in 0..n {
        let mut d = a[j * n + j].re;
        for k in 0..j {
            d -= a[j * n + k].norm_sqr();
        }
        if d <= 0.0 || !d.is_finite() {
            return false;
        }
        let d = d.sqrt();
        a[j * n + j] = Complex64::new(d, 0.0);
        for i in (j + 1)..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k].conj();
            }
            a[i * n + j] = s / d;
        }
    }
    true
}

/// Hermitian PSD test on a scratch copy with a diagonal shift.
pub(crate) fn psd_with_shift(entries: &[Complex64], n: usize, shift: f64, scratch: &mut Vec<Complex64>) -> bool {
    scratch.clear();
    scratch.extend_from_slice(entries);
    for i in 0..n {
        scratch[i * n + i] += shift;
    }
    cholesky_succeeds(scratch, n)
}
