//! Shared helpers for the integration suites.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qmatkit::matrix::ComplexMatrix;
use qmatkit::protocols::MeasurementOutcome;
use qmatkit::state::PureBipartiteState;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::new(rows, cols, data).expect("finite entries")
}

pub fn random_state(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> PureBipartiteState {
    loop {
        let m = random_matrix(rng, rows, cols);
        if m.frobenius_norm() > 1e-3 {
            return PureBipartiteState::new(m, true).expect("nonzero matrix");
        }
    }
}

pub fn random_outcome(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> MeasurementOutcome {
    loop {
        let m = random_matrix(rng, rows, cols);
        if m.frobenius_norm() > 1e-3 {
            return MeasurementOutcome::new(m, true).expect("nonzero matrix");
        }
    }
}

/// Haar-ish random unitary: eigenvector matrix of a random Hermitian.
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let a = random_matrix(rng, n, n);
    let h = a.add(&a.dagger()).expect("square");
    h.hermitian_eig(1e-9).expect("Hermitian").eigenvectors
}

pub fn bell() -> PureBipartiteState {
    PureBipartiteState::new(ComplexMatrix::identity(2), true).unwrap()
}

pub fn bell_outcome() -> MeasurementOutcome {
    MeasurementOutcome::new(ComplexMatrix::identity(2), true).unwrap()
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ])
    .unwrap()
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(-1.0, 0.0)],
    ])
    .unwrap()
}

/// Generalized shift X_d: |i⟩ → |i+1 mod d⟩.
pub fn shift_matrix(d: usize) -> ComplexMatrix {
    let mut data = vec![Complex64::ZERO; d * d];
    for i in 0..d {
        data[((i + 1) % d) * d + i] = Complex64::ONE;
    }
    ComplexMatrix::new(d, d, data).unwrap()
}

/// Generalized clock Z_d: |i⟩ → ω^i |i⟩ with ω = e^{2πi/d}.
pub fn clock_matrix(d: usize) -> ComplexMatrix {
    let mut data = vec![Complex64::ZERO; d * d];
    for i in 0..d {
        let phase = 2.0 * std::f64::consts::PI * (i as f64) / (d as f64);
        data[i * d + i] = Complex64::from_polar(1.0, phase);
    }
    ComplexMatrix::new(d, d, data).unwrap()
}

/// The d² generalized Bell outcomes (1/√d)·X^a Z^b, an orthonormal basis of
/// the joint space under the Frobenius inner product.
pub fn generalized_bell_outcomes(d: usize) -> Vec<MeasurementOutcome> {
    let x = shift_matrix(d);
    let z = clock_matrix(d);
    let mut out = Vec::with_capacity(d * d);
    let mut xa = ComplexMatrix::identity(d);
    for _ in 0..d {
        let mut m = xa.clone();
        for _ in 0..d {
            out.push(MeasurementOutcome::new(m.clone(), true).unwrap());
            m = m.matmul(&z).unwrap();
        }
        xa = x.matmul(&xa).unwrap();
    }
    out
}

pub fn max_entry_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.max_abs_diff(b).expect("matching shapes")
}
