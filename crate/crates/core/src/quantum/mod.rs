//! Observables, states, the Lüders update and purification.

mod observable;
mod state;

pub use observable::{observable_from_matrix, validate_observable, Observable, SpectralTerm};
pub use state::{
    classify_outcomes, luders_update, probabilities, purify, DensityOperator, OutcomePartition, PureState, QuantumState,
};
