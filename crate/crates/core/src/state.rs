//! Pure bipartite states as coefficient matrices.
//!
//! A state |ψ⟩ = Σ a_ij |i⟩|j⟩ is stored as the matrix A with A_ij = a_ij
//! and unit Frobenius norm. Local operations multiply A on the left (party 1)
//! or by the transpose on the right (party 2); the reduced density operator
//! of party 1 is AA†, whose eigenvalues are the Schmidt weights.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Svd};

/// Accepted deviation of the coefficient-matrix norm from 1.
pub const NORM_TOL: f64 = 1e-9;

/// Accepted deviation of `u u†` from the identity for local operations.
const UNITARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PureBipartiteState {
    coeffs: ComplexMatrix,
}

/// Schmidt form Σ_k √λ_k |k̃⟩₁|k̃⟩₂: the kept coefficients √λ_k in
/// descending order and the two orthonormal basis sets as matrix columns.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub coefficients: Vec<f64>,
    pub left_basis: ComplexMatrix,
    pub right_basis: ComplexMatrix,
    pub schmidt_number: usize,
}

impl PureBipartiteState {
    /// Wrap a coefficient matrix. With `normalize` the matrix is scaled to
    /// unit Frobenius norm (a zero matrix is rejected); without it the norm
    /// must already be 1 within `NORM_TOL`.
    pub fn new(coeffs: ComplexMatrix, normalize: bool) -> Result<Self> {
        let norm = coeffs.frobenius_norm();
        if normalize {
            if norm == 0.0 {
                return Err(Error::ZeroState);
            }
            let scaled = coeffs.scale(Complex64::new(1.0 / norm, 0.0));
            Ok(Self { coeffs: scaled })
        } else {
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::Normalization(norm));
            }
            Ok(Self { coeffs })
        }
    }

    pub fn dim_left(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn dim_right(&self) -> usize {
        self.coeffs.cols()
    }

    pub fn coeffs(&self) -> &ComplexMatrix {
        &self.coeffs
    }

    /// Local operation on party 1: A ← uA.
    pub fn apply_left(&self, u: &ComplexMatrix) -> Result<Self> {
        check_unitary(u, self.dim_left())?;
        let coeffs = u.matmul(&self.coeffs)?;
        Self::new(coeffs, true)
    }

    /// Local operation on party 2: A ← A uᵗ.
    pub fn apply_right(&self, u: &ComplexMatrix) -> Result<Self> {
        check_unitary(u, self.dim_right())?;
        let coeffs = self.coeffs.matmul(&u.transpose())?;
        Self::new(coeffs, true)
    }

    /// Reduced density operator of party 1, ρ₁ = AA†.
    pub fn reduced_density_left(&self) -> ComplexMatrix {
        self.coeffs
            .matmul(&self.coeffs.dagger())
            .expect("A A† dimensions always agree")
    }

    /// Eigenvalues λ_k of AA† above `tol` times the largest, descending.
    pub fn schmidt_coefficients(&self, tol: f64) -> Vec<f64> {
        let eig = self
            .reduced_density_left()
            .hermitian_eig(1e-9)
            .expect("AA† is Hermitian");
        // Same noise floor as the SVD path, so the eigenvalue count and the
        // rank of A make identical decisions on exactly degenerate states.
        let max = eig.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
        let floor = crate::matrix::EIG_NOISE_FLOOR_REL * max;
        eig.eigenvalues
            .iter()
            .map(|&l| if l < floor { 0.0 } else { l })
            .filter(|&l| l > tol * max)
            .collect()
    }

    /// Schmidt number as the rank of A (Criteria 2).
    pub fn schmidt_number(&self, tol: f64) -> usize {
        self.coeffs.rank(tol)
    }

    /// Criteria 1: entangled iff more than one nonzero Schmidt weight.
    pub fn is_entangled(&self, tol: f64) -> bool {
        self.schmidt_number(tol) >= 2
    }

    /// Full Schmidt decomposition via the SVD of A.
    ///
    /// With A = Σ σ_k u_k v_k† the expansion over basis kets needs
    /// A = Σ σ_k u_k w_kᵗ, so the right Schmidt vectors are w_k = conj(v_k).
    pub fn schmidt_decompose(&self, tol: f64) -> SchmidtDecomposition {
        let Svd {
            u,
            singular_values,
            v,
        } = self.coeffs.svd();
        let max = singular_values.first().copied().unwrap_or(0.0);
        let kept = singular_values.iter().filter(|&&s| s > tol * max).count();

        let mut left = ComplexMatrix::zeros(self.dim_left(), kept);
        let mut right = ComplexMatrix::zeros(self.dim_right(), kept);
        for k in 0..kept {
            for i in 0..self.dim_left() {
                left.set(i, k, u.get(i, k));
            }
            for j in 0..self.dim_right() {
                right.set(j, k, v.get(j, k).conj());
            }
        }
        SchmidtDecomposition {
            coefficients: singular_values[..kept].to_vec(),
            left_basis: left,
            right_basis: right,
            schmidt_number: kept,
        }
    }
}

impl SchmidtDecomposition {
    /// Reassemble Σ_k √λ_k (left col k)(right col k)ᵗ.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let rows = self.left_basis.rows();
        let cols = self.right_basis.rows();
        let mut out = ComplexMatrix::zeros(rows, cols);
        for k in 0..self.schmidt_number {
            let s = Complex64::new(self.coefficients[k], 0.0);
            for i in 0..rows {
                for j in 0..cols {
                    let v = out.get(i, j) + s * self.left_basis.get(i, k) * self.right_basis.get(j, k);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

fn check_unitary(u: &ComplexMatrix, dim: usize) -> Result<()> {
    if u.rows() != dim || u.cols() != dim {
        return Err(Error::Dimension(format!(
            "local operation must be {dim}x{dim}, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let gram = u.matmul(&u.dagger())?;
    let deviation = gram.max_abs_diff(&ComplexMatrix::identity(dim))?;
    if deviation > UNITARY_TOL * (dim as f64) {
        return Err(Error::NotUnitary(deviation));
    }
    Ok(())
}
