//! Brute-force multi-party state verifier.
//!
//! States live as flat amplitude vectors over an explicit list of party
//! dimensions, last party varying fastest. Tensor products and two-party
//! projections are computed by direct summation with no shared machinery
//! with the protocol shortcuts, so agreement between the two is evidence,
//! not tautology.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::protocols::MeasurementOutcome;
use crate::state::PureBipartiteState;

const PROBABILITY_FLOOR: f64 = 1e-18;
const NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct MultiPartyState {
    party_dims: Vec<usize>,
    amplitudes: Vec<Complex64>,
}

impl MultiPartyState {
    /// Wrap an amplitude vector; length must match the dimension product and
    /// the 2-norm must be 1 within 1e-9.
    pub fn new(party_dims: Vec<usize>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let total: usize = party_dims.iter().product();
        if party_dims.is_empty() || party_dims.contains(&0) {
            return Err(Error::Dimension("party dimensions must be positive".into()));
        }
        if amplitudes.len() != total {
            return Err(Error::Dimension(format!(
                "expected {total} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Normalization(norm));
        }
        Ok(Self {
            party_dims,
            amplitudes,
        })
    }

    pub fn party_dims(&self) -> &[usize] {
        &self.party_dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Flatten a bipartite coefficient matrix: amplitude[i·d₂ + j] = A_ij.
    pub fn from_bipartite(state: &PureBipartiteState) -> Self {
        Self {
            party_dims: vec![state.dim_left(), state.dim_right()],
            amplitudes: state.coeffs().entries().to_vec(),
        }
    }

    /// Inverse of `from_bipartite`; requires exactly two parties.
    pub fn to_bipartite(&self) -> Result<PureBipartiteState> {
        let [d1, d2] = self.party_dims[..] else {
            return Err(Error::Dimension(format!(
                "expected 2 parties, got {}",
                self.party_dims.len()
            )));
        };
        let coeffs = ComplexMatrix::new(d1, d2, self.amplitudes.clone())?;
        PureBipartiteState::new(coeffs, true)
    }

    pub fn tensor_product(&self, other: &MultiPartyState) -> MultiPartyState {
        let mut party_dims = self.party_dims.clone();
        party_dims.extend_from_slice(&other.party_dims);
        let mut amplitudes = Vec::with_capacity(self.amplitudes.len() * other.amplitudes.len());
        for &a in &self.amplitudes {
            for &b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        MultiPartyState {
            party_dims,
            amplitudes,
        }
    }

    /// Project parties `party_a` and `party_b` onto `outcome`, contracting
    /// conj(outcome)_jk against amplitudes with party_a = j, party_b = k.
    /// Returns the renormalized residual state (with the two parties removed
    /// and the rest renumbered in original order) and the outcome
    /// probability.
    pub fn project_pair(
        &self,
        party_a: usize,
        party_b: usize,
        outcome: &MeasurementOutcome,
    ) -> Result<(MultiPartyState, f64)> {
        let n = self.party_dims.len();
        if party_a >= n || party_b >= n || party_a == party_b {
            return Err(Error::Dimension(format!(
                "invalid party pair ({party_a}, {party_b}) for {n} parties"
            )));
        }
        if outcome.rows() != self.party_dims[party_a] || outcome.cols() != self.party_dims[party_b]
        {
            return Err(Error::Dimension(format!(
                "outcome must be {}x{}, got {}x{}",
                self.party_dims[party_a],
                self.party_dims[party_b],
                outcome.rows(),
                outcome.cols()
            )));
        }

        let keep: Vec<usize> = (0..n).filter(|&p| p != party_a && p != party_b).collect();
        let rest_dims: Vec<usize> = keep.iter().map(|&p| self.party_dims[p]).collect();
        let rest_len: usize = rest_dims.iter().product::<usize>().max(1);
        let mut residual = vec![Complex64::ZERO; rest_len];

        let mut index = vec![0usize; n];
        for (flat, &amp) in self.amplitudes.iter().enumerate() {
            decode(flat, &self.party_dims, &mut index);
            let j = index[party_a];
            let k = index[party_b];
            let mut rid = 0usize;
            for (&p, &d) in keep.iter().zip(&rest_dims) {
                rid = rid * d + index[p];
            }
            residual[rid] += outcome.coeffs().get(j, k).conj() * amp;
        }

        let norm = l2_norm(&residual);
        let probability = norm * norm;
        if probability < PROBABILITY_FLOOR {
            return Err(Error::ImpossibleOutcome);
        }
        for z in residual.iter_mut() {
            *z /= norm;
        }
        Ok((
            MultiPartyState {
                party_dims: rest_dims,
                amplitudes: residual,
            },
            probability,
        ))
    }

    /// Exact entrywise comparison (not up to phase) within `tol`.
    pub fn states_equal(&self, other: &MultiPartyState, tol: f64) -> Result<bool> {
        if self.party_dims != other.party_dims {
            return Err(Error::Dimension("party dimension lists differ".into()));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .all(|(a, b)| (a - b).norm() <= tol))
    }
}

fn decode(mut flat: usize, dims: &[usize], index: &mut [usize]) {
    for p in (0..dims.len()).rev() {
        index[p] = flat % dims[p];
        flat /= dims[p];
    }
}

fn l2_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
