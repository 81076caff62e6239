use serde::{Deserialize, Serialize};

use super::{entanglement_of_pure_state, incompatibility_entropy, shannon_entropy};
use crate::error::Result;
use crate::measurement::{evolve, is_repeatable, MeasurementModel, StateTransformerSet};
use crate::quantum::{probabilities, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    /// The identity is only claimed for repeatable measurements.
    NotApplicable,
}

/// Outcome of one numerical identity check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub status: VerdictStatus,
}

impl TheoremVerdict {
    /// Passes iff `deviation ≤ tolerance` (NaN deviations fail).
    pub fn new(label: impl Into<String>, lhs: f64, rhs: f64, deviation: f64, tolerance: f64) -> Self {
        let status = if deviation <= tolerance {
            VerdictStatus::Pass
        } else {
            VerdictStatus::Fail
        };
        Self {
            label: label.into(),
            lhs,
            rhs,
            deviation,
            tolerance,
            status,
        }
    }

    /// `|lhs − rhs|` against `tolerance`.
    pub fn compare(label: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self::new(label, lhs, rhs, (lhs - rhs).abs(), tolerance)
    }

    /// A bound check: `value ≤ tolerance`, recorded with `rhs = 0`.
    pub fn bound(label: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::new(label, value, 0.0, value, tolerance)
    }

    pub fn not_applicable(label: impl Into<String>, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            lhs: 0.0,
            rhs: 0.0,
            deviation: 0.0,
            tolerance,
            status: VerdictStatus::NotApplicable,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == VerdictStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == VerdictStatus::Fail
    }
}

pub const FINAL_INCOMPATIBILITY: &str = "entanglement_equals_final_incompatibility";
pub const INITIAL_INCOMPATIBILITY: &str = "entanglement_equals_initial_incompatibility";

/// Entanglement of the final object-pointer state against the incompatibility
/// entropy of the lifted observable `A ⊗ 1` in that same state. Both must
/// also equal the Shannon entropy of the outcome probabilities, so the
/// deviation is the largest of the three pairwise gaps.
pub fn verify_entanglement_is_final_incompatibility(
    model: &MeasurementModel,
    ts: &StateTransformerSet,
    psi: &PureState,
    tolerance: f64,
) -> Result<TheoremVerdict> {
    if !is_repeatable(ts).repeatable {
        return Ok(TheoremVerdict::not_applicable(FINAL_INCOMPATIBILITY, tolerance));
    }
    let fin = evolve(model, psi)?;
    let lhs = entanglement_of_pure_state(&fin)?;
    let lifted = ts.observable().lift(&fin.structure, 0)?;
    let rhs = incompatibility_entropy(&lifted, &PureState::new(fin.vector.clone())?)?;
    let h = shannon_entropy(&probabilities(ts.observable(), psi)?)?;
    let deviation = (lhs - rhs).abs().max((lhs - h).abs()).max((rhs - h).abs());
    Ok(TheoremVerdict::new(
        FINAL_INCOMPATIBILITY,
        lhs,
        rhs,
        deviation,
        tolerance,
    ))
}

/// Incompatibility entropy of `A` in the initial object state against the
/// entanglement of the final object-pointer state.
pub fn verify_entanglement_is_initial_incompatibility(
    ts: &StateTransformerSet,
    psi: &PureState,
    model: &MeasurementModel,
    tolerance: f64,
) -> Result<TheoremVerdict> {
    if !is_repeatable(ts).repeatable {
        return Ok(TheoremVerdict::not_applicable(INITIAL_INCOMPATIBILITY, tolerance));
    }
    let lhs = incompatibility_entropy(ts.observable(), psi)?;
    let rhs = entanglement_of_pure_state(&evolve(model, psi)?)?;
    Ok(TheoremVerdict::compare(INITIAL_INCOMPATIBILITY, lhs, rhs, tolerance))
}
