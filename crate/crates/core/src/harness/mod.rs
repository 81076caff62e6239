//! Scenario files, random instances, the end-to-end verification pipeline
//! and report rendering.

mod batch;
mod generate;
mod pipeline;
mod report;
mod scenario;

#[cfg(feature = "parallel")]
pub use batch::run_batch_parallel;
pub use batch::{run_batch, run_batch_sequential, BatchReport, SeedRun};
pub use generate::generate_random_instance;
pub use pipeline::{labels, run_pipeline, run_pipeline_timed, Stage, StageFailure, VerificationReport};
pub use report::{render, render_batch, render_json, render_text, text_verdicts, Format};
pub use scenario::{
    parse_scenario, InstrumentSpec, ObservableSpec, Scenario, ScenarioError, ScenarioOptions, ScenarioSpec, StateSpec,
    Tolerances, Verbosity,
};
