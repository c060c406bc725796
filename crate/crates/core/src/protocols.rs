//! Entanglement swapping, swap chains, and bipartite teleportation.
//!
//! A joint measurement projecting the middle particles of two pairs with
//! coefficient matrices A and C onto the outcome with matrix B leaves the
//! outer particles in the state F = A B̄ C / ρ with outcome probability
//! ρ² = tr{(A B̄ C)(A B̄ C)†}. Chains fold that product left to right;
//! teleportation runs two such projections and inverts the accumulated
//! channel matrix to build the receiver's correction.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::state::PureBipartiteState;

/// Outcomes with squared norm below this are treated as orthogonal to the
/// joint state; normalization is undefined there.
const PROBABILITY_FLOOR: f64 = 1e-18;

/// Max entrywise deviation of G G† from the identity accepted as unitary.
const UNITARY_FLAG_TOL: f64 = 1e-8;

/// Coefficient matrix of a joint-measurement outcome state, unit Frobenius
/// norm so that ρ² is a Born-rule probability.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOutcome {
    coeffs: ComplexMatrix,
}

/// Post-swap state together with the probability of the measured outcome.
#[derive(Debug, Clone)]
pub struct SwapResult {
    pub state: PureBipartiteState,
    pub probability: f64,
}

/// Everything the teleportation algebra produces: the intermediate states
/// M and N, their normalizers, the channel matrix G the input was dragged
/// through, and the receiver's correction (Gᵗ)⁻¹.
#[derive(Debug, Clone)]
pub struct TeleportPlan {
    pub m_matrix: ComplexMatrix,
    pub n_matrix: ComplexMatrix,
    pub rho1: f64,
    pub rho2: f64,
    pub channel: ComplexMatrix,
    pub correction: ComplexMatrix,
    pub correction_is_unitary: bool,
    pub total_probability: f64,
}

impl MeasurementOutcome {
    /// Wrap an outcome matrix; with `normalize` it is scaled to unit norm.
    pub fn new(coeffs: ComplexMatrix, normalize: bool) -> Result<Self> {
        let state = PureBipartiteState::new(coeffs, normalize)?;
        Ok(Self {
            coeffs: state.coeffs().clone(),
        })
    }

    pub fn coeffs(&self) -> &ComplexMatrix {
        &self.coeffs
    }

    pub fn rows(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn cols(&self) -> usize {
        self.coeffs.cols()
    }
}

/// Single entanglement swap: F = A B̄ C / ρ, probability ρ².
pub fn entanglement_swap(
    left: &PureBipartiteState,
    measurement: &MeasurementOutcome,
    right: &PureBipartiteState,
) -> Result<SwapResult> {
    if left.dim_right() != measurement.rows() || measurement.cols() != right.dim_left() {
        return Err(Error::Dimension(format!(
            "swap needs {}x{} outcome between pairs, got {}x{}",
            left.dim_right(),
            right.dim_left(),
            measurement.rows(),
            measurement.cols()
        )));
    }
    let raw = left
        .coeffs()
        .matmul(&measurement.coeffs().conjugate())?
        .matmul(right.coeffs())?;
    normalize_outcome(raw)
}

/// Series of swaps over `pairs` joined by `measurements`; the raw matrix is
/// the left-to-right product A₁B̄₁A₂B̄₂⋯Aₙ, normalized once at the end.
/// The reported probability is the joint probability of every outcome.
pub fn swap_chain(
    pairs: &[PureBipartiteState],
    measurements: &[MeasurementOutcome],
) -> Result<SwapResult> {
    if pairs.is_empty() {
        return Err(Error::Dimension("swap chain needs at least one pair".into()));
    }
    if measurements.len() + 1 != pairs.len() {
        return Err(Error::Dimension(format!(
            "{} pairs need {} measurements, got {}",
            pairs.len(),
            pairs.len() - 1,
            measurements.len()
        )));
    }
    if measurements.is_empty() {
        return Ok(SwapResult {
            state: pairs[0].clone(),
            probability: 1.0,
        });
    }
    let mut raw = pairs[0].coeffs().clone();
    for (m, next) in measurements.iter().zip(&pairs[1..]) {
        if raw.cols() != m.rows() || m.cols() != next.dim_left() {
            return Err(Error::Dimension(format!(
                "chain link expects {}x{} outcome, got {}x{}",
                raw.cols(),
                next.dim_left(),
                m.rows(),
                m.cols()
            )));
        }
        raw = raw.matmul(&m.coeffs().conjugate())?.matmul(next.coeffs())?;
    }
    normalize_outcome(raw)
}

/// Bipartite teleportation through two resource pairs.
///
/// `outcome1` (D) projects particles 2/3, `outcome2` (F) projects
/// particles 1/5. The channel is G = D̄ B F̄ C / (ρ₁ρ₂); the receiver's
/// correction on particle 4 is (Gᵗ)⁻¹, so A G (correction)ᵗ = A for every
/// input. The correction is unitary exactly when G G† = I.
pub fn teleport_bipartite(
    input: &PureBipartiteState,
    resource1: &PureBipartiteState,
    resource2: &PureBipartiteState,
    outcome1: &MeasurementOutcome,
    outcome2: &MeasurementOutcome,
) -> Result<TeleportPlan> {
    let d = input.dim_left();
    let square = |r: usize, c: usize| r == d && c == d;
    if !square(input.dim_left(), input.dim_right())
        || !square(resource1.dim_left(), resource1.dim_right())
        || !square(resource2.dim_left(), resource2.dim_right())
        || !square(outcome1.rows(), outcome1.cols())
        || !square(outcome2.rows(), outcome2.cols())
    {
        return Err(Error::Dimension(
            "teleportation requires a common dimension d on every pair".into(),
        ));
    }

    let a = input.coeffs();
    let b = resource1.coeffs();
    let c = resource2.coeffs();
    let d_conj = outcome1.coeffs().conjugate();
    let f_conj = outcome2.coeffs().conjugate();

    // First projection: |γ⟩₁₄ with M = A D̄ B / ρ₁.
    let raw_m = a.matmul(&d_conj)?.matmul(b)?;
    let rho1 = raw_m.frobenius_norm();
    if rho1 * rho1 < PROBABILITY_FLOOR {
        return Err(Error::ImpossibleOutcome);
    }
    let m_matrix = raw_m.scale(Complex64::new(1.0 / rho1, 0.0));

    // Second projection: |φ⟩₄₆ with N = Mᵗ F̄ C / ρ₂.
    let raw_n = m_matrix.transpose().matmul(&f_conj)?.matmul(c)?;
    let rho2 = raw_n.frobenius_norm();
    if rho2 * rho2 < PROBABILITY_FLOOR {
        return Err(Error::ImpossibleOutcome);
    }
    let n_matrix = raw_n.scale(Complex64::new(1.0 / rho2, 0.0));

    let channel = d_conj
        .matmul(b)?
        .matmul(&f_conj)?
        .matmul(c)?
        .scale(Complex64::new(1.0 / (rho1 * rho2), 0.0));
    let correction = channel.transpose().inverse(1e-12)?;

    let gram = channel.matmul(&channel.dagger())?;
    let correction_is_unitary =
        gram.max_abs_diff(&ComplexMatrix::identity(d))? <= UNITARY_FLAG_TOL;

    Ok(TeleportPlan {
        m_matrix,
        n_matrix,
        rho1,
        rho2,
        channel,
        correction,
        correction_is_unitary,
        total_probability: (rho1 * rho1) * (rho2 * rho2),
    })
}

impl TeleportPlan {
    /// Coefficient matrix after the receiver's correction: A G (correction)ᵗ.
    /// Up to round-off this is the input matrix A again.
    pub fn recovered(&self, input: &PureBipartiteState) -> Result<ComplexMatrix> {
        input
            .coeffs()
            .matmul(&self.channel)?
            .matmul(&self.correction.transpose())
    }

    /// Frobenius distance between the corrected state and the input.
    pub fn recovery_residual(&self, input: &PureBipartiteState) -> Result<f64> {
        Ok(self.recovered(input)?.sub(input.coeffs())?.frobenius_norm())
    }
}

/// True iff the correction matrix is the same (within `1e-9` entrywise) for
/// every trial input, the teleportation channel being input-independent.
pub fn correction_state_independence_check(
    resource1: &PureBipartiteState,
    resource2: &PureBipartiteState,
    outcome1: &MeasurementOutcome,
    outcome2: &MeasurementOutcome,
    trial_inputs: &[PureBipartiteState],
) -> Result<bool> {
    let Some((first, rest)) = trial_inputs.split_first() else {
        return Err(Error::Dimension("need at least one trial input".into()));
    };
    let reference = teleport_bipartite(first, resource1, resource2, outcome1, outcome2)?;
    for input in rest {
        let plan = teleport_bipartite(input, resource1, resource2, outcome1, outcome2)?;
        if plan.correction.max_abs_diff(&reference.correction)? > 1e-9 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn normalize_outcome(raw: ComplexMatrix) -> Result<SwapResult> {
    let norm = raw.frobenius_norm();
    let probability = norm * norm;
    if probability < PROBABILITY_FLOOR {
        return Err(Error::ImpossibleOutcome);
    }
    let state = PureBipartiteState::new(raw.scale(Complex64::new(1.0 / norm, 0.0)), true)?;
    Ok(SwapResult { state, probability })
}
