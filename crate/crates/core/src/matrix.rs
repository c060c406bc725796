//! Dense complex-matrix kernel.
//!
//! Everything here is plain double-precision dense linear algebra sized for
//! small matrices (the intended scale is well under 64x64). Eigenvalues of
//! Hermitian matrices come from a cyclic Jacobi sweep; the SVD and everything
//! built on it (rank, inverse) reuse that kernel.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Off-diagonal mass at which the Jacobi iteration stops, relative to the
/// Frobenius norm of the input.
const JACOBI_REL_THRESHOLD: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Gram-matrix eigenvalues below this fraction of the largest are round-off
/// from exactly zero directions and are flattened to zero, otherwise their
/// square roots (~1e-8 relative) would masquerade as singular values and
/// inflate ranks of exactly rank-deficient matrices.
pub(crate) const EIG_NOISE_FLOOR_REL: f64 = 1e-13;

/// Relative cutoff below which a singular value is treated as exactly zero
/// when recovering the paired singular-vector factor.
const SV_ZERO_CUTOFF: f64 = 1e-12;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in descending
/// order, eigenvectors as the columns of a unitary matrix.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

/// Thin singular value decomposition `a = u * diag(sigma) * v†` with
/// `min(rows, cols)` columns in each factor and descending singular values.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::ONE;
        }
        m
    }

    /// Build from nested rows of `(re, im)` pairs. Convenient in tests.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
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

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    /// Column `j` as a vector of length `rows`.
    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + aik * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn conjugate(&self) -> ComplexMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Complex64::conj).collect(),
        }
    }

    pub fn transpose(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn dagger(&self) -> ComplexMatrix {
        self.conjugate().transpose()
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "trace requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok((0..self.rows).map(|i| self.get(i, i)).sum())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension("addition shape mismatch".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, rhs: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.add(&rhs.scale(-Complex64::ONE))
    }

    /// Largest entrywise absolute difference; shapes must match.
    pub fn max_abs_diff(&self, rhs: &ComplexMatrix) -> Result<f64> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension("comparison shape mismatch".into()));
        }
        Ok(self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// `tol` bounds the accepted relative deviation from Hermiticity,
    /// `‖a − a†‖_F ≤ tol·‖a‖_F`. The iteration runs on the symmetrized part
    /// `(a + a†)/2` and stops once the off-diagonal Frobenius mass drops
    /// below `1e-12·‖a‖_F`, with a hard cap of 100 sweeps.
    pub fn hermitian_eig(&self, tol: f64) -> Result<HermitianEig> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "eigendecomposition requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let norm = self.frobenius_norm();
        let deviation = self.sub(&self.dagger())?.frobenius_norm();
        if deviation > tol * norm.max(f64::MIN_POSITIVE) {
            return Err(Error::NotHermitian(deviation / norm.max(f64::MIN_POSITIVE)));
        }

        let n = self.rows;
        // Symmetrize so round-off in the input cannot leak into the rotations.
        let mut h = self.add(&self.dagger())?.scale(Complex64::new(0.5, 0.0));
        let mut v = ComplexMatrix::identity(n);
        let stop = JACOBI_REL_THRESHOLD * norm;

        for _ in 0..JACOBI_MAX_SWEEPS {
            if off_diagonal_norm(&h) <= stop {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let hpq = h.get(p, q);
                    if hpq.norm() <= stop / (n as f64) {
                        continue;
                    }
                    let alpha = hpq.arg();
                    let apq = hpq.norm();
                    let app = h.get(p, p).re;
                    let aqq = h.get(q, q).re;
                    let theta = 0.5 * (2.0 * apq).atan2(app - aqq);
                    let (st, ct) = theta.sin_cos();
                    let phase = Complex64::from_polar(1.0, -alpha);
                    // Unitary acting on the (p, q) plane:
                    //   [ ct        -st      ]
                    //   [ st*phase   ct*phase]
                    let jpp = Complex64::new(ct, 0.0);
                    let jpq = Complex64::new(-st, 0.0);
                    let jqp = phase * st;
                    let jqq = phase * ct;

                    // h <- j† h j, touching only rows/columns p and q.
                    for i in 0..n {
                        let hip = h.get(i, p);
                        let hiq = h.get(i, q);
                        h.set(i, p, hip * jpp + hiq * jqp);
                        h.set(i, q, hip * jpq + hiq * jqq);
                    }
                    for i in 0..n {
                        let hpi = h.get(p, i);
                        let hqi = h.get(q, i);
                        h.set(p, i, jpp.conj() * hpi + jqp.conj() * hqi);
                        h.set(q, i, jpq.conj() * hpi + jqq.conj() * hqi);
                    }
                    for i in 0..n {
                        let vip = v.get(i, p);
                        let viq = v.get(i, q);
                        v.set(i, p, vip * jpp + viq * jqp);
                        v.set(i, q, vip * jpq + viq * jqq);
                    }
                }
            }
        }

        // Stable descending sort, ties broken by original index.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            h.get(j, j)
                .re
                .partial_cmp(&h.get(i, i).re)
                .expect("eigenvalues are finite")
        });

        let eigenvalues: Vec<f64> = order.iter().map(|&k| h.get(k, k).re).collect();
        let mut eigenvectors = ComplexMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            for i in 0..n {
                eigenvectors.set(i, dst, v.get(i, src));
            }
        }
        Ok(HermitianEig {
            eigenvalues,
            eigenvectors,
        })
    }

    /// Thin SVD built on `hermitian_eig` of the smaller Gram matrix.
    pub fn svd(&self) -> Svd {
        if self.rows >= self.cols {
            let gram = self
                .dagger()
                .matmul(self)
                .expect("a† a dimensions always agree");
            // The Gram matrix is Hermitian by construction.
            let eig = gram.hermitian_eig(1e-9).expect("gram matrix is Hermitian");
            let sigma = gram_eigenvalues_to_sigma(&eig.eigenvalues);
            let v = eig.eigenvectors;
            let u = recover_factor(self, &v, &sigma);
            Svd {
                u,
                singular_values: sigma,
                v,
            }
        } else {
            let gram = self
                .matmul(&self.dagger())
                .expect("a a† dimensions always agree");
            let eig = gram.hermitian_eig(1e-9).expect("gram matrix is Hermitian");
            let sigma = gram_eigenvalues_to_sigma(&eig.eigenvalues);
            let u = eig.eigenvectors;
            let v = recover_factor(&self.dagger(), &u, &sigma);
            Svd {
                u,
                singular_values: sigma,
                v,
            }
        }
    }

    /// Number of singular values above `tol` times the largest one. The zero
    /// matrix has rank 0.
    pub fn rank(&self, tol: f64) -> usize {
        let sigma = self.svd().singular_values;
        let max = sigma.first().copied().unwrap_or(0.0);
        if max == 0.0 {
            return 0;
        }
        sigma.iter().filter(|&&s| s > tol * max).count()
    }

    /// Inverse of a full-rank square matrix via the SVD,
    /// `a⁻¹ = v diag(1/σ) u†`. Fails if any singular value falls at or below
    /// `tol` relative to the largest.
    pub fn inverse(&self, tol: f64) -> Result<ComplexMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "inverse requires a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let Svd {
            u,
            singular_values,
            v,
        } = self.svd();
        let max = singular_values.first().copied().unwrap_or(0.0);
        if max == 0.0 || singular_values.iter().any(|&s| s <= tol * max) {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let mut scaled = ComplexMatrix::zeros(n, n);
        for (j, &s) in singular_values.iter().enumerate() {
            let inv = Complex64::new(1.0 / s, 0.0);
            for i in 0..n {
                scaled.set(i, j, v.get(i, j) * inv);
            }
        }
        scaled.matmul(&u.dagger())
    }
}

fn gram_eigenvalues_to_sigma(eigenvalues: &[f64]) -> Vec<f64> {
    let max = eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    eigenvalues
        .iter()
        .map(|&l| {
            if l < EIG_NOISE_FLOOR_REL * max {
                0.0
            } else {
                l.sqrt()
            }
        })
        .collect()
}

fn off_diagonal_norm(h: &ComplexMatrix) -> f64 {
    let n = h.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += h.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Given `a` and the right factor `w` (columns are orthonormal eigenvectors
/// of the Gram matrix), recover the left factor column by column as
/// `a w_k / σ_k`; columns belonging to zero singular values are completed by
/// Gram-Schmidt against everything already placed.
fn recover_factor(a: &ComplexMatrix, w: &ComplexMatrix, sigma: &[f64]) -> ComplexMatrix {
    let m = a.rows();
    let k = sigma.len();
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let cutoff = SV_ZERO_CUTOFF * sigma_max;
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(k);

    for (j, &s) in sigma.iter().enumerate() {
        if s > cutoff && s > 0.0 {
            let wj = w.column(j);
            let mut col = vec![Complex64::ZERO; m];
            for (i, entry) in col.iter_mut().enumerate() {
                let mut acc = Complex64::ZERO;
                for (l, &wl) in wj.iter().enumerate() {
                    acc += a.get(i, l) * wl;
                }
                *entry = acc / s;
            }
            orthogonalize(&mut col, &cols);
            normalize(&mut col);
            cols.push(col);
        } else {
            cols.push(complete_column(m, &cols));
        }
    }

    let mut out = ComplexMatrix::zeros(m, k);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            out.set(i, j, z);
        }
    }
    out
}

fn orthogonalize(col: &mut [Complex64], against: &[Vec<Complex64>]) {
    for prev in against {
        let overlap: Complex64 = prev
            .iter()
            .zip(col.iter())
            .map(|(p, c)| p.conj() * c)
            .sum();
        for (c, p) in col.iter_mut().zip(prev.iter()) {
            *c -= overlap * p;
        }
    }
}

fn normalize(col: &mut [Complex64]) {
    let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in col.iter_mut() {
            *z /= norm;
        }
    }
}

/// A fresh unit column orthogonal to every column in `existing`, found by
/// Gram-Schmidt on standard basis vectors.
fn complete_column(m: usize, existing: &[Vec<Complex64>]) -> Vec<Complex64> {
    for seed in 0..m {
        let mut col = vec![Complex64::ZERO; m];
        col[seed] = Complex64::ONE;
        orthogonalize(&mut col, existing);
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for z in col.iter_mut() {
                *z /= norm;
            }
            return col;
        }
    }
    unreachable!("fewer orthonormal columns than the ambient dimension")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap()
    }

    /// Deterministic pseudo-random complex matrix, independent of any RNG
    /// crate so kernel tests stand alone.
    fn pseudo_random(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let data = (0..rows * cols).map(|_| c(next(), next())).collect();
        ComplexMatrix::new(rows, cols, data).unwrap()
    }

    /// Naive triple-loop product, the independent oracle for `matmul`.
    fn matmul_reference(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(a.rows(), b.cols());
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut acc = Complex64::ZERO;
                for k in 0..a.cols() {
                    acc += a.get(i, k) * b.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    #[test]
    fn constructor_rejects_bad_shapes_and_nonfinite() {
        assert!(matches!(
            ComplexMatrix::new(2, 2, vec![Complex64::ZERO; 3]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            ComplexMatrix::new(0, 2, vec![]),
            Err(Error::Dimension(_))
        ));
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn matmul_identity_and_nilpotent() {
        let x = pauli_x();
        let prod = ComplexMatrix::identity(2).matmul(&x).unwrap();
        assert_eq!(prod, x);

        let n = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let sq = n.matmul(&n).unwrap();
        assert_eq!(sq, ComplexMatrix::zeros(2, 2));
    }

    #[test]
    fn matmul_matches_triple_loop_reference() {
        let a = pseudo_random(3, 2, 7);
        let b = pseudo_random(2, 4, 11);
        let got = a.matmul(&b).unwrap();
        let want = matmul_reference(&a, &b);
        assert!(got.max_abs_diff(&want).unwrap() <= 1e-14);
    }

    #[test]
    fn matmul_dimension_mismatch() {
        let a = pseudo_random(3, 2, 1);
        let b = pseudo_random(3, 2, 2);
        assert!(matches!(a.matmul(&b), Err(Error::Dimension(_))));
    }

    #[test]
    fn conjugate_transpose_dagger() {
        let row = ComplexMatrix::new(1, 2, vec![c(0.0, 0.0), c(0.0, 1.0)]).unwrap();
        let conj = row.conjugate();
        assert_eq!(conj.get(0, 1), c(0.0, -1.0));

        let n = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, 1.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let d = n.dagger();
        assert_eq!(d.get(0, 0), c(0.0, 0.0));
        assert_eq!(d.get(1, 0), c(0.0, -1.0));
        assert_eq!(d.get(0, 1), c(0.0, 0.0));

        let a = pseudo_random(3, 4, 21);
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.dagger().dagger(), a);
        assert_eq!(a.dagger(), a.transpose().conjugate());
    }

    #[test]
    fn trace_and_frobenius_norm() {
        assert_eq!(ComplexMatrix::identity(2).trace().unwrap(), c(2.0, 0.0));
        assert!(matches!(
            pseudo_random(2, 3, 3).trace(),
            Err(Error::Dimension(_))
        ));

        let bell = ComplexMatrix::identity(2).scale(c(1.0 / 2f64.sqrt(), 0.0));
        assert!((bell.frobenius_norm() - 1.0).abs() <= 1e-15);

        let a = pseudo_random(4, 3, 5);
        let direct: f64 = a.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((a.frobenius_norm() - direct).abs() <= 1e-14);
        let via_trace = a.matmul(&a.dagger()).unwrap().trace().unwrap().re.sqrt();
        assert!((a.frobenius_norm() - via_trace).abs() <= 1e-12);
    }

    #[test]
    fn hermitian_eig_diagonal_and_scalar() {
        let d = ComplexMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .unwrap();
        let eig = d.hermitian_eig(1e-9).unwrap();
        assert!((eig.eigenvalues[0] - 2.0).abs() <= 1e-12);
        assert!((eig.eigenvalues[1] - 1.0).abs() <= 1e-12);

        let half = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        let eig = half.hermitian_eig(1e-9).unwrap();
        assert!(eig.eigenvalues.iter().all(|&l| (l - 0.5).abs() <= 1e-12));
    }

    #[test]
    fn hermitian_eig_residual_and_orthonormality() {
        let a = pseudo_random(5, 5, 17);
        let h = a.add(&a.dagger()).unwrap();
        let eig = h.hermitian_eig(1e-9).unwrap();
        // a v_k = lambda_k v_k per column.
        let hv = h.matmul(&eig.eigenvectors).unwrap();
        for k in 0..5 {
            for i in 0..5 {
                let want = eig.eigenvectors.get(i, k) * eig.eigenvalues[k];
                assert!((hv.get(i, k) - want).norm() <= 1e-9);
            }
        }
        let gram = eig.eigenvectors.dagger().matmul(&eig.eigenvectors).unwrap();
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(5)).unwrap() <= 1e-10);
        // Descending order.
        assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn hermitian_eig_rejects_non_hermitian() {
        let a = pseudo_random(3, 3, 23);
        assert!(matches!(
            a.hermitian_eig(1e-9),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn eigenvalues_of_gram_match_squared_singular_values() {
        let a = pseudo_random(4, 3, 31);
        let gram = a.matmul(&a.dagger()).unwrap();
        let eig = gram.hermitian_eig(1e-9).unwrap();
        let sigma = a.svd().singular_values;
        for (k, &s) in sigma.iter().enumerate() {
            assert!((eig.eigenvalues[k] - s * s).abs() <= 1e-10);
        }
        // Remaining eigenvalues of aa† (rows > cols) are zero.
        for &l in &eig.eigenvalues[sigma.len()..] {
            assert!(l.abs() <= 1e-10);
        }
    }

    #[test]
    fn svd_zero_and_scaled_identity() {
        let sigma = ComplexMatrix::zeros(2, 2).svd().singular_values;
        assert!(sigma.iter().all(|&s| s == 0.0));

        let bell = ComplexMatrix::identity(2).scale(c(1.0 / 2f64.sqrt(), 0.0));
        let sigma = bell.svd().singular_values;
        for &s in &sigma {
            assert!((s - 1.0 / 2f64.sqrt()).abs() <= 1e-12);
        }
    }

    #[test]
    fn svd_reconstruction_random_shapes() {
        for (rows, cols, seed) in [(3, 2, 41), (2, 3, 43), (4, 4, 47), (6, 5, 53)] {
            let a = pseudo_random(rows, cols, seed);
            let Svd {
                u,
                singular_values,
                v,
            } = a.svd();
            let k = singular_values.len();
            let mut mid = ComplexMatrix::zeros(k, k);
            for (i, &s) in singular_values.iter().enumerate() {
                mid.set(i, i, c(s, 0.0));
            }
            let rebuilt = u.matmul(&mid).unwrap().matmul(&v.dagger()).unwrap();
            assert!(a.max_abs_diff(&rebuilt).unwrap() <= 1e-9 * a.frobenius_norm());

            let iu = u.dagger().matmul(&u).unwrap();
            let iv = v.dagger().matmul(&v).unwrap();
            assert!(iu.max_abs_diff(&ComplexMatrix::identity(k)).unwrap() <= 1e-10);
            assert!(iv.max_abs_diff(&ComplexMatrix::identity(k)).unwrap() <= 1e-10);
            assert!(singular_values.windows(2).all(|w| w[0] >= w[1]));
            assert!(singular_values.iter().all(|&s| s >= 0.0));
        }
    }

    #[test]
    fn svd_handles_rank_deficiency() {
        // Rank-1 outer product with zero singular values to complete.
        let u = pseudo_random(4, 1, 61);
        let v = pseudo_random(1, 4, 67);
        let a = u.matmul(&v).unwrap();
        let svd = a.svd();
        assert!(svd.singular_values[1..].iter().all(|&s| s <= 1e-12));
        let gram = svd.u.dagger().matmul(&svd.u).unwrap();
        assert!(gram.max_abs_diff(&ComplexMatrix::identity(4)).unwrap() <= 1e-10);
    }

    #[test]
    fn rank_cases() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert_eq!(a.rank(1e-9), 1);

        let bell = ComplexMatrix::identity(2).scale(c(1.0 / 2f64.sqrt(), 0.0));
        assert_eq!(bell.rank(1e-9), 2);

        let u = pseudo_random(3, 1, 71);
        let v = pseudo_random(1, 3, 73);
        assert_eq!(u.matmul(&v).unwrap().rank(1e-9), 1);

        assert_eq!(ComplexMatrix::zeros(3, 3).rank(1e-9), 0);
    }

    #[test]
    fn inverse_cases() {
        let i2 = ComplexMatrix::identity(2);
        assert!(i2.inverse(1e-12).unwrap().max_abs_diff(&i2).unwrap() <= 1e-12);

        let x = pauli_x();
        assert!(x.inverse(1e-12).unwrap().max_abs_diff(&x).unwrap() <= 1e-12);

        let a = pseudo_random(3, 3, 79);
        let inv = a.inverse(1e-12).unwrap();
        let left = inv.matmul(&a).unwrap();
        let right = a.matmul(&inv).unwrap();
        assert!(left.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() <= 1e-8);
        assert!(right.max_abs_diff(&ComplexMatrix::identity(3)).unwrap() <= 1e-8);

        let singular = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            singular.inverse(1e-12),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn trace_cyclicity() {
        let a = pseudo_random(4, 4, 83);
        let b = pseudo_random(4, 4, 89);
        let tab = a.matmul(&b).unwrap().trace().unwrap();
        let tba = b.matmul(&a).unwrap().trace().unwrap();
        assert!((tab - tba).norm() <= 1e-10);
    }

    #[test]
    fn eigenvalue_sum_matches_norm_squared() {
        let a = pseudo_random(5, 3, 97);
        let gram = a.matmul(&a.dagger()).unwrap();
        let sum: f64 = gram.hermitian_eig(1e-9).unwrap().eigenvalues.iter().sum();
        let norm2 = a.frobenius_norm().powi(2);
        assert!((sum - norm2).abs() <= 1e-9 * norm2.max(1.0));
    }
}
