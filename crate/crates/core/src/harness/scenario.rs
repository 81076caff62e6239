use serde::{Deserialize, Serialize};

use crate::linalg::{ComplexMatrix, ComplexVector, C64};
use crate::measurement::{make_ideal_transformers, make_repeatable_transformers, StateTransformerSet};
use crate::quantum::{Observable, PureState};
use crate::tol;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid `{field}`: {message}")]
    Validation { field: String, message: String },
}

fn invalid(field: &str, message: impl ToString) -> ScenarioError {
    ScenarioError::Validation {
        field: field.to_string(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObservableSpec {
    PauliX,
    PauliY,
    PauliZ,
    Diag {
        values: Vec<f64>,
    },
    /// Row-major, each entry `[re, im]`.
    Matrix {
        entries: Vec<Vec<C64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Amplitudes { values: Vec<C64> },
    Basis { index: usize },
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstrumentSpec {
    Ideal,
    Repeatable {
        seed: u64,
    },
    /// One matrix per spectral term of the observable, ascending eigenvalue order.
    Custom {
        transformers: Vec<Vec<Vec<C64>>>,
    },
}

/// Per-check tolerances. Missing fields keep their defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub prc: f64,
    pub kraus: f64,
    pub repeatability: f64,
    pub schmidt: f64,
    pub entropy: f64,
    pub commutator: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            prc: 1e-10,
            kraus: 1e-10,
            repeatability: 1e-10,
            schmidt: 1e-9,
            entropy: 1e-9,
            commutator: 1e-10,
        }
    }
}

impl Tolerances {
    pub fn uniform(t: f64) -> Self {
        Self {
            prc: t,
            kraus: t,
            repeatability: t,
            schmidt: t,
            entropy: t,
            commutator: t,
        }
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        let all = [
            self.prc,
            self.kraus,
            self.repeatability,
            self.schmidt,
            self.entropy,
            self.commutator,
        ];
        if all.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            Err(invalid("options.tolerances", "tolerances must be positive and finite"))
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verbosity {
    #[default]
    Summary,
    Full,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioOptions {
    pub tolerances: Tolerances,
    pub verbosity: Verbosity,
}

/// The scenario document as written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub object_dim: usize,
    pub observable: ObservableSpec,
    pub state: StateSpec,
    pub instrument: InstrumentSpec,
    #[serde(default)]
    pub options: ScenarioOptions,
}

/// A validated scenario: the document plus the objects it describes.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub spec: ScenarioSpec,
    pub observable: Observable,
    pub state: PureState,
    pub transformers: StateTransformerSet,
}

impl Scenario {
    pub fn from_spec(spec: ScenarioSpec) -> Result<Self, ScenarioError> {
        let d = spec.object_dim;
        if d == 0 {
            return Err(invalid("object_dim", "must be at least 1"));
        }
        spec.options.tolerances.validate()?;
        let observable = build_observable(&spec.observable, d)?;
        let state = build_state(&spec.state, d)?;
        let transformers = match &spec.instrument {
            InstrumentSpec::Ideal => make_ideal_transformers(&observable),
            InstrumentSpec::Repeatable { seed } => make_repeatable_transformers(&observable, *seed),
            InstrumentSpec::Custom { transformers } => {
                let ops = transformers
                    .iter()
                    .enumerate()
                    .map(|(k, rows)| square_matrix(rows, d, &format!("instrument.transformers[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                StateTransformerSet::new(observable.clone(), ops).map_err(|e| invalid("instrument.transformers", e))?
            }
        };
        Ok(Self {
            spec,
            observable,
            state,
            transformers,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.spec).expect("scenario serializes")
    }
}

fn square_matrix(rows: &[Vec<C64>], d: usize, field: &str) -> Result<ComplexMatrix, ScenarioError> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(invalid(field, format!("expected a {d}x{d} matrix")));
    }
    if rows.iter().flatten().any(|z| !z.is_finite()) {
        return Err(invalid(field, "entries must be finite"));
    }
    ComplexMatrix::from_rows(rows).map_err(|e| invalid(field, e))
}

fn build_observable(spec: &ObservableSpec, d: usize) -> Result<Observable, ScenarioError> {
    let field = "observable";
    let qubit = |obs: Observable| {
        if d == 2 {
            Ok(obs)
        } else {
            Err(invalid(
                "object_dim",
                format!("Pauli observables act on dimension 2, not {d}"),
            ))
        }
    };
    match spec {
        ObservableSpec::PauliX => qubit(Observable::pauli_x()),
        ObservableSpec::PauliY => qubit(Observable::pauli_y()),
        ObservableSpec::PauliZ => qubit(Observable::pauli_z()),
        ObservableSpec::Diag { values } => {
            if values.len() != d {
                return Err(invalid(
                    "observable.values",
                    format!("expected {d} values, got {}", values.len()),
                ));
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(invalid("observable.values", "values must be finite"));
            }
            Observable::diag(values).map_err(|e| invalid(field, e))
        }
        ObservableSpec::Matrix { entries } => {
            let m = square_matrix(entries, d, "observable.entries")?;
            Observable::from_matrix(&m).map_err(|e| invalid("observable.entries", e))
        }
    }
}

fn build_state(spec: &StateSpec, d: usize) -> Result<PureState, ScenarioError> {
    match spec {
        StateSpec::Amplitudes { values } => {
            if values.len() != d {
                return Err(invalid(
                    "state.values",
                    format!("expected {d} amplitudes, got {}", values.len()),
                ));
            }
            if values.iter().any(|z| !z.is_finite()) {
                return Err(invalid("state.values", "amplitudes must be finite"));
            }
            let v = ComplexVector::new(values.clone());
            let norm = v.norm();
            if (norm - 1.0).abs() > tol::PARSE_RENORMALIZE {
                return Err(invalid(
                    "state.values",
                    format!("state is not normalized (norm {norm})"),
                ));
            }
            PureState::normalizing(&v).map_err(|e| invalid("state.values", e))
        }
        StateSpec::Basis { index } => {
            if *index >= d {
                return Err(invalid(
                    "state.index",
                    format!("basis index {index} out of range for dimension {d}"),
                ));
            }
            Ok(PureState::basis(d, *index))
        }
        StateSpec::Uniform => Ok(PureState::uniform(d)),
    }
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let spec: ScenarioSpec = serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Scenario::from_spec(spec)
}
