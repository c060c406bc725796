//! File formats and report construction for the batch CLI.
//!
//! Inputs are JSON: a state file carries `dims`, a row-major `matrix` of
//! `[re, im]` pairs, and an optional `normalize` flag; a protocol file
//! carries a `kind` of `swap`, `chain`, or `teleport` plus the named state
//! payloads inline. Reports are JSON as well, floats rounded to 12
//! significant digits so identical inputs produce byte-identical output.

use num_complex::Complex64;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::matrix::ComplexMatrix;
use crate::oracle::MultiPartyState;
use crate::protocols::{entanglement_swap, swap_chain, teleport_bipartite, MeasurementOutcome};
use crate::state::PureBipartiteState;

/// Stable CLI exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CRITERIA_DISAGREE: i32 = 3;
pub const EXIT_ORACLE_DEVIATION: i32 = 4;
pub const EXIT_IMPOSSIBLE_OUTCOME: i32 = 5;
pub const EXIT_SINGULAR: i32 = 6;

/// A failed CLI run: diagnostic plus the exit code to report.
#[derive(Debug)]
pub struct CliFailure {
    pub message: String,
    pub exit_code: i32,
}

impl CliFailure {
    fn parse(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            exit_code: EXIT_PARSE,
        }
    }
}

impl From<Error> for CliFailure {
    fn from(err: Error) -> Self {
        let exit_code = match err {
            Error::ImpossibleOutcome => EXIT_IMPOSSIBLE_OUTCOME,
            Error::SingularMatrix => EXIT_SINGULAR,
            _ => EXIT_PARSE,
        };
        Self {
            message: err.to_string(),
            exit_code,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: [usize; 2],
    pub matrix: Vec<Value>,
    #[serde(default)]
    pub normalize: bool,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ProtocolFile {
    Swap {
        left: StateFile,
        measurement: StateFile,
        right: StateFile,
        tolerance: Option<f64>,
    },
    Chain {
        pairs: Vec<StateFile>,
        measurements: Vec<StateFile>,
        tolerance: Option<f64>,
    },
    Teleport {
        input: StateFile,
        resource1: StateFile,
        resource2: StateFile,
        outcome1: StateFile,
        outcome2: StateFile,
        tolerance: Option<f64>,
    },
}

impl StateFile {
    pub fn parse(text: &str) -> Result<Self, CliFailure> {
        serde_json::from_str(text).map_err(|e| CliFailure::parse(format!("state file: {e}")))
    }

    fn to_matrix(&self) -> Result<ComplexMatrix, CliFailure> {
        let [rows, cols] = self.dims;
        if self.matrix.len() != rows {
            return Err(CliFailure::parse(format!(
                "matrix has {} rows, dims declare {rows}",
                self.matrix.len()
            )));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for (i, row) in self.matrix.iter().enumerate() {
            let entries = row
                .as_array()
                .ok_or_else(|| CliFailure::parse(format!("matrix row {i} is not an array")))?;
            if entries.len() != cols {
                return Err(CliFailure::parse(format!(
                    "matrix row {i} has {} entries, dims declare {cols}",
                    entries.len()
                )));
            }
            for (j, entry) in entries.iter().enumerate() {
                let pair = entry.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                    CliFailure::parse(format!(
                        "matrix row {i}, column {j}: expected a [re, im] pair"
                    ))
                })?;
                let re = pair[0].as_f64().ok_or_else(|| {
                    CliFailure::parse(format!("matrix row {i}, column {j}: re is not a number"))
                })?;
                let im = pair[1].as_f64().ok_or_else(|| {
                    CliFailure::parse(format!("matrix row {i}, column {j}: im is not a number"))
                })?;
                data.push(Complex64::new(re, im));
            }
        }
        ComplexMatrix::new(rows, cols, data).map_err(CliFailure::from)
    }

    pub fn to_state(&self) -> Result<PureBipartiteState, CliFailure> {
        PureBipartiteState::new(self.to_matrix()?, self.normalize).map_err(CliFailure::from)
    }

    pub fn to_outcome(&self) -> Result<MeasurementOutcome, CliFailure> {
        MeasurementOutcome::new(self.to_matrix()?, self.normalize).map_err(CliFailure::from)
    }
}

impl ProtocolFile {
    pub fn parse(text: &str) -> Result<Self, CliFailure> {
        serde_json::from_str(text).map_err(|e| CliFailure::parse(format!("protocol file: {e}")))
    }

    pub fn tolerance(&self) -> Option<f64> {
        match self {
            ProtocolFile::Swap { tolerance, .. }
            | ProtocolFile::Chain { tolerance, .. }
            | ProtocolFile::Teleport { tolerance, .. } => *tolerance,
        }
    }
}

/// Round to 12 significant digits; clears negative zero so formatting is
/// stable across algebraically equivalent runs.
fn round_sig(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("rounded float reparses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

fn num(x: f64) -> Value {
    json!(round_sig(x))
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| {
            let row: Vec<Value> = (0..m.cols())
                .map(|j| {
                    let z = m.get(i, j);
                    json!([round_sig(z.re), round_sig(z.im)])
                })
                .collect();
            Value::Array(row)
        })
        .collect();
    Value::Array(rows)
}

/// `schmidt` subcommand: both entanglement criteria plus the decomposition.
pub fn schmidt_report(state: &PureBipartiteState, tol: f64) -> Result<Value, CliFailure> {
    // Criteria 1 counts eigenvalues of AA† above tol²·λ_max, matching the
    // singular-value threshold of Criteria 2.
    let lambda = state.schmidt_coefficients(tol * tol);
    let by_eigenvalues = lambda.len();
    let by_rank = state.schmidt_number(tol);
    let agree = by_eigenvalues == by_rank;
    let decomposition = state.schmidt_decompose(tol);

    let report = json!({
        "command": "schmidt",
        "dims": [state.dim_left(), state.dim_right()],
        "tolerance": num(tol),
        "schmidt_number_by_eigenvalues": by_eigenvalues,
        "schmidt_number_by_rank": by_rank,
        "criteria_agree": agree,
        "is_entangled": state.is_entangled(tol),
        "eigenvalues": lambda.iter().map(|&l| num(l)).collect::<Vec<_>>(),
        "schmidt_coefficients": decomposition
            .coefficients
            .iter()
            .map(|&s| num(s))
            .collect::<Vec<_>>(),
        "left_basis": matrix_to_json(&decomposition.left_basis),
        "right_basis": matrix_to_json(&decomposition.right_basis),
    });
    if !agree {
        return Err(CliFailure {
            message: format!(
                "entanglement criteria disagree: {by_eigenvalues} eigenvalues vs rank {by_rank}"
            ),
            exit_code: EXIT_CRITERIA_DISAGREE,
        });
    }
    Ok(report)
}

/// `run` subcommand over a parsed protocol file.
pub fn run_report(
    protocol: &ProtocolFile,
    tol: f64,
    verify_with_oracle: bool,
) -> Result<Value, CliFailure> {
    let tol = protocol.tolerance().unwrap_or(tol);
    match protocol {
        ProtocolFile::Swap {
            left,
            measurement,
            right,
            ..
        } => {
            let left = left.to_state()?;
            let outcome = measurement.to_outcome()?;
            let right = right.to_state()?;
            let result = entanglement_swap(&left, &outcome, &right)?;
            let mut report = swap_like_report("swap", &result, tol);
            if verify_with_oracle {
                let joint = MultiPartyState::from_bipartite(&left)
                    .tensor_product(&MultiPartyState::from_bipartite(&right));
                let (rest, p) = joint.project_pair(1, 2, &outcome)?;
                attach_oracle_comparison(&mut report, &rest, p, &result, tol)?;
            }
            Ok(report)
        }
        ProtocolFile::Chain {
            pairs,
            measurements,
            ..
        } => {
            let pairs: Vec<PureBipartiteState> = pairs
                .iter()
                .map(StateFile::to_state)
                .collect::<Result<_, _>>()?;
            let outcomes: Vec<MeasurementOutcome> = measurements
                .iter()
                .map(StateFile::to_outcome)
                .collect::<Result<_, _>>()?;
            let result = swap_chain(&pairs, &outcomes)?;
            let mut report = swap_like_report("chain", &result, tol);
            if verify_with_oracle {
                let mut joint = MultiPartyState::from_bipartite(&pairs[0]);
                for pair in &pairs[1..] {
                    joint = joint.tensor_product(&MultiPartyState::from_bipartite(pair));
                }
                let mut total_p = 1.0;
                for outcome in &outcomes {
                    // After each removal the next measured pair sits at
                    // indices (1, 2) again.
                    let (rest, p) = joint.project_pair(1, 2, outcome)?;
                    joint = rest;
                    total_p *= p;
                }
                attach_oracle_comparison(&mut report, &joint, total_p, &result, tol)?;
            }
            Ok(report)
        }
        ProtocolFile::Teleport {
            input,
            resource1,
            resource2,
            outcome1,
            outcome2,
            ..
        } => {
            let input = input.to_state()?;
            let resource1 = resource1.to_state()?;
            let resource2 = resource2.to_state()?;
            let outcome1 = outcome1.to_outcome()?;
            let outcome2 = outcome2.to_outcome()?;
            let plan = teleport_bipartite(&input, &resource1, &resource2, &outcome1, &outcome2)?;
            let residual = plan.recovery_residual(&input)?;

            let mut report = json!({
                "command": "run",
                "kind": "teleport",
                "m_matrix": matrix_to_json(&plan.m_matrix),
                "n_matrix": matrix_to_json(&plan.n_matrix),
                "rho1": num(plan.rho1),
                "rho2": num(plan.rho2),
                "correction": matrix_to_json(&plan.correction),
                "correction_is_unitary": plan.correction_is_unitary,
                "total_probability": num(plan.total_probability),
                "recovery_residual": num(residual),
            });

            if verify_with_oracle {
                // Parties 0..5 are the paper's particles 1..6.
                let joint = MultiPartyState::from_bipartite(&input)
                    .tensor_product(&MultiPartyState::from_bipartite(&resource1))
                    .tensor_product(&MultiPartyState::from_bipartite(&resource2));
                let (after_first, p1) = joint.project_pair(1, 2, &outcome1)?;
                // Remaining particles (1, 4, 5, 6); particles 1 and 5 are
                // now indices 0 and 2.
                let (after_second, p2) = after_first.project_pair(0, 2, &outcome2)?;
                let oracle_p = p1 * p2;

                let oracle_state = after_second.to_bipartite()?;
                let state_dev = oracle_state.coeffs().max_abs_diff(&plan.n_matrix)?;
                let prob_dev = (oracle_p - plan.total_probability).abs();
                let max_dev = state_dev.max(prob_dev);

                // Apply the correction on particle 4 of the oracle's (6,4)
                // state and compare against the input.
                let corrected = oracle_state
                    .coeffs()
                    .transpose()
                    .matmul(&plan.correction.transpose())?;
                let corrected =
                    corrected.scale(Complex64::new(1.0 / corrected.frobenius_norm(), 0.0));
                let oracle_recovery = corrected.sub(input.coeffs())?.frobenius_norm();

                let obj = report.as_object_mut().expect("report is an object");
                obj.insert("oracle_state".into(), matrix_to_json(oracle_state.coeffs()));
                obj.insert("oracle_probability".into(), num(oracle_p));
                obj.insert("oracle_max_deviation".into(), num(max_dev));
                obj.insert("oracle_recovery_residual".into(), num(oracle_recovery));
                if max_dev > tol {
                    return Err(CliFailure {
                        message: format!(
                            "oracle deviation {max_dev:.3e} exceeds tolerance {tol:.3e}"
                        ),
                        exit_code: EXIT_ORACLE_DEVIATION,
                    });
                }
            }
            Ok(report)
        }
    }
}

fn swap_like_report(kind: &str, result: &crate::protocols::SwapResult, tol: f64) -> Value {
    let lambda = result.state.schmidt_coefficients(tol * tol);
    json!({
        "command": "run",
        "kind": kind,
        "coeffs": matrix_to_json(result.state.coeffs()),
        "probability": num(result.probability),
        "schmidt_number": result.state.schmidt_number(tol),
        "schmidt_eigenvalues": lambda.iter().map(|&l| num(l)).collect::<Vec<_>>(),
        "is_entangled": result.state.is_entangled(tol),
    })
}

fn attach_oracle_comparison(
    report: &mut Value,
    oracle_rest: &MultiPartyState,
    oracle_p: f64,
    result: &crate::protocols::SwapResult,
    tol: f64,
) -> Result<(), CliFailure> {
    let oracle_state = oracle_rest.to_bipartite()?;
    let state_dev = oracle_state.coeffs().max_abs_diff(result.state.coeffs())?;
    let prob_dev = (oracle_p - result.probability).abs();
    let max_dev = state_dev.max(prob_dev);

    let obj = report.as_object_mut().expect("report is an object");
    obj.insert("oracle_state".into(), matrix_to_json(oracle_state.coeffs()));
    obj.insert("oracle_probability".into(), num(oracle_p));
    obj.insert("oracle_max_deviation".into(), num(max_dev));
    if max_dev > tol {
        return Err(CliFailure {
            message: format!("oracle deviation {max_dev:.3e} exceeds tolerance {tol:.3e}"),
            exit_code: EXIT_ORACLE_DEVIATION,
        });
    }
    Ok(())
}

/// Serialize a report, compact by default, one trailing newline either way.
pub fn render(report: &Value, pretty: bool) -> String {
    let mut text = if pretty {
        serde_json::to_string_pretty(report).expect("report serializes")
    } else {
        serde_json::to_string(report).expect("report serializes")
    };
    text.push('\n');
    text
}
