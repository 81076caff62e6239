//! State transformers, repeatability, and unitary dilations of measurements.

mod dilation;
mod transformers;

pub use dilation::{
    dilate, evolve, repeat_measurement_check, verify_kraus_connection, verify_prc, MeasurementModel, OutcomeLink,
};
pub use transformers::{
    is_repeatable, make_ideal_transformers, make_repeatable_transformers, make_shifted_transformers, post_state,
    RepeatabilityCheck, StateTransformerSet,
};
