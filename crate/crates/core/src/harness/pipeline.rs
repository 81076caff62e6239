use serde::Serialize;

use super::scenario::{Scenario, ScenarioSpec, Tolerances};
use crate::error::Error;
use crate::info::{
    commutator_norm, mutual_information, read_pointer_tripartite, shannon_entropy,
    verify_entanglement_is_final_incompatibility, verify_entanglement_is_initial_incompatibility,
    verify_pointer_reading, BipartiteInput, EntropyReport, PointerReadingReport, TheoremVerdict,
};
use crate::measurement::{
    dilate, evolve, is_repeatable, repeat_measurement_check, verify_kraus_connection, verify_prc,
};
use crate::quantum::{classify_outcomes, probabilities};
use crate::schmidt::{reconstruct, reduced_states, schmidt_decompose_aligned, twin_reducees, verify_definite_values};

pub mod labels {
    pub const PRC: &str = "probability_reproducibility";
    pub const KRAUS: &str = "kraus_connection";
    pub const REPEATABILITY: &str = "repeatability";
    pub const RECONSTRUCTION: &str = "schmidt_reconstruction";
    pub const DEFINITE_VALUES: &str = "schmidt_definite_values";
    pub const WEIGHTS: &str = "schmidt_weights_match_probabilities";
    pub const TWINS: &str = "twin_reducees_commute";
    pub const LEDGER: &str = "entropy_ledger";
    pub const FINAL: &str = "entanglement_equals_final_incompatibility";
    pub const INITIAL: &str = "entanglement_equals_initial_incompatibility";
    pub const FINAL_COMPATIBILITY: &str = "final_state_compatibility";
    pub const READING_MARGINALS: &str = "pointer_reading_marginals";
    pub const READING_COMPATIBILITY: &str = "pointer_reading_compatibility";
    pub const READING_INCOMPATIBILITY: &str = "pointer_reading_incompatibility";

    /// Every label, in report order.
    pub const ALL: [&str; 14] = [
        PRC,
        KRAUS,
        REPEATABILITY,
        RECONSTRUCTION,
        DEFINITE_VALUES,
        WEIGHTS,
        TWINS,
        LEDGER,
        FINAL,
        INITIAL,
        FINAL_COMPATIBILITY,
        READING_MARGINALS,
        READING_COMPATIBILITY,
        READING_INCOMPATIBILITY,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Probabilities,
    Repeatability,
    Dilation,
    Evolution,
    ProbabilityReproducibility,
    KrausConnection,
    Schmidt,
    DefiniteValues,
    Twins,
    Entropies,
    Identities,
    PointerReading,
    PostReading,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageFailure {
    pub stage: Stage,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub scenario: ScenarioSpec,
    pub probabilities: Vec<f64>,
    pub detectable_outcomes: Vec<usize>,
    pub schmidt_coefficients: Vec<f64>,
    pub entropies: Option<EntropyReport>,
    pub pointer_reading: Option<PointerReadingReport>,
    pub verdicts: Vec<TheoremVerdict>,
    pub error: Option<StageFailure>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<f64>,
}

impl VerificationReport {
    pub fn any_failed(&self) -> bool {
        self.verdicts.iter().any(TheoremVerdict::failed)
    }

    /// 0 all pass, 1 a verdict failed, 3 a stage raised a numerical error.
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            3
        } else if self.any_failed() {
            1
        } else {
            0
        }
    }
}

/// Runs every stage on the scenario and collects the verdicts. A stage error
/// stops the run and is stored in the report together with the stage.
pub fn run_pipeline(sc: &Scenario, tol: &Tolerances) -> VerificationReport {
    let mut report = VerificationReport {
        scenario: sc.spec.clone(),
        probabilities: vec![],
        detectable_outcomes: vec![],
        schmidt_coefficients: vec![],
        entropies: None,
        pointer_reading: None,
        verdicts: vec![],
        error: None,
        passed: false,
        duration_ms: None,
    };
    if let Err(e) = run_stages(sc, tol, &mut report) {
        report.error = Some(e);
    }
    report.passed = report.error.is_none() && report.verdicts.iter().all(TheoremVerdict::passed);
    report
}

/// Like [`run_pipeline`] with the elapsed wall-clock time recorded.
pub fn run_pipeline_timed(sc: &Scenario, tol: &Tolerances) -> VerificationReport {
    let start = std::time::Instant::now();
    let mut report = run_pipeline(sc, tol);
    report.duration_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    report
}

fn at(stage: Stage) -> impl Fn(Error) -> StageFailure {
    move |e| StageFailure {
        stage,
        message: e.to_string(),
    }
}

fn run_stages(sc: &Scenario, tol: &Tolerances, report: &mut VerificationReport) -> Result<(), StageFailure> {
    let ts = &sc.transformers;
    let obs = &sc.observable;
    let psi = &sc.state;
    let verdicts = &mut report.verdicts;

    report.probabilities = probabilities(obs, psi).map_err(at(Stage::Probabilities))?;
    report.detectable_outcomes = classify_outcomes(obs, psi)
        .map_err(at(Stage::Probabilities))?
        .detectable;
    let h = shannon_entropy(&report.probabilities).map_err(at(Stage::Probabilities))?;
    let structural = is_repeatable(ts);

    let model = dilate(ts).map_err(at(Stage::Dilation))?;
    let fin = evolve(&model, psi).map_err(at(Stage::Evolution))?;

    let prc = verify_prc(&model, psi).map_err(at(Stage::ProbabilityReproducibility))?;
    verdicts.push(TheoremVerdict::bound(labels::PRC, prc, tol.prc));
    let kraus = verify_kraus_connection(&model, ts, psi).map_err(at(Stage::KrausConnection))?;
    verdicts.push(TheoremVerdict::bound(labels::KRAUS, kraus, tol.kraus));
    let confirm = repeat_measurement_check(&model, ts, psi).map_err(at(Stage::Repeatability))?;
    let deviation = (1.0 - confirm).max(structural.max_violation);
    verdicts.push(TheoremVerdict::new(
        labels::REPEATABILITY,
        confirm,
        1.0,
        deviation,
        tol.repeatability,
    ));

    if !structural.repeatable {
        for label in &labels::ALL[3..] {
            let t = match *label {
                labels::FINAL_COMPATIBILITY | labels::READING_COMPATIBILITY | labels::TWINS => tol.commutator,
                labels::RECONSTRUCTION | labels::DEFINITE_VALUES | labels::WEIGHTS => tol.schmidt,
                _ => tol.entropy,
            };
            verdicts.push(TheoremVerdict::not_applicable(*label, t));
        }
        return Ok(());
    }

    let sf = schmidt_decompose_aligned(&fin, obs).map_err(at(Stage::Schmidt))?;
    report.schmidt_coefficients = sf.coefficients().to_vec();
    let overlap = reconstruct(&sf).inner(&fin.vector).norm();
    verdicts.push(TheoremVerdict::new(
        labels::RECONSTRUCTION,
        overlap,
        1.0,
        (1.0 - overlap).abs(),
        tol.schmidt,
    ));

    let values = verify_definite_values(&sf, obs, model.pointer_observable(), model.outcome_map())
        .map_err(at(Stage::DefiniteValues))?;
    let violation = values.max_left_violation.max(values.max_right_violation);
    verdicts.push(TheoremVerdict::bound(labels::DEFINITE_VALUES, violation, tol.schmidt));

    let weights = sf.weights();
    let weight_gap = if values.is_bijection() && sf.len() == report.detectable_outcomes.len() {
        values
            .assignment
            .iter()
            .map(|a| (weights[a.term] - report.probabilities[a.object_term]).abs())
            .fold(0.0, f64::max)
    } else {
        1.0
    };
    verdicts.push(TheoremVerdict::bound(labels::WEIGHTS, weight_gap, tol.schmidt));

    let twins = twin_reducees(&sf, &values);
    let (rho1, rho2) = reduced_states(&fin).map_err(at(Stage::Twins))?;
    let twin_commutator = rho1
        .matrix()
        .commutator(&twins.object_matrix())
        .and_then(|c1| {
            Ok(c1
                .frobenius_norm()
                .max(rho2.matrix().commutator(&twins.pointer_matrix())?.frobenius_norm()))
        })
        .map_err(|e| at(Stage::Twins)(e.into()))?;
    verdicts.push(TheoremVerdict::bound(labels::TWINS, twin_commutator, tol.commutator));

    let entropies = mutual_information(BipartiteInput::Pure(&fin)).map_err(at(Stage::Entropies))?;
    let ledger = [
        (entropies.s1 - entropies.s2).abs(),
        entropies.s12.abs(),
        (entropies.mutual_information - 2.0 * h).abs(),
        (entropies.entanglement.unwrap_or(f64::NAN) - h).abs(),
        (entropies.quasi_classical.unwrap_or(f64::NAN) - h).abs(),
    ];
    let ledger_gap = ledger.iter().copied().fold(0.0, f64::max);
    let ledger_gap = if ledger.iter().any(|x| x.is_nan()) {
        f64::NAN
    } else {
        ledger_gap
    };
    verdicts.push(TheoremVerdict::new(
        labels::LEDGER,
        entropies.mutual_information,
        2.0 * h,
        ledger_gap,
        tol.entropy,
    ));
    report.entropies = Some(entropies);

    verdicts.push(
        verify_entanglement_is_final_incompatibility(&model, ts, psi, tol.entropy).map_err(at(Stage::Identities))?,
    );
    verdicts.push(
        verify_entanglement_is_initial_incompatibility(ts, psi, &model, tol.entropy).map_err(at(Stage::Identities))?,
    );

    let c1 = commutator_norm(obs, &rho1).map_err(at(Stage::Identities))?;
    let c2 = commutator_norm(model.pointer_observable(), &rho2).map_err(at(Stage::Identities))?;
    verdicts.push(TheoremVerdict::new(
        labels::FINAL_COMPATIBILITY,
        c1,
        c2,
        c1.max(c2),
        tol.commutator,
    ));

    let tri = read_pointer_tripartite(&fin, &model).map_err(at(Stage::PointerReading))?;
    let reading = verify_pointer_reading(&tri, &model).map_err(at(Stage::PostReading))?;
    let marginal_gap = reading
        .marginal_entropies
        .iter()
        .map(|s| (s - h).abs())
        .fold(0.0, f64::max);
    verdicts.push(TheoremVerdict::new(
        labels::READING_MARGINALS,
        reading.marginal_entropies[0],
        h,
        marginal_gap,
        tol.entropy,
    ));
    verdicts.push(TheoremVerdict::new(
        labels::READING_COMPATIBILITY,
        reading.object_commutator,
        reading.pointer_commutator,
        reading.object_commutator.max(reading.pointer_commutator),
        tol.commutator,
    ));
    verdicts.push(TheoremVerdict::compare(
        labels::READING_INCOMPATIBILITY,
        reading.tripartite_incompatibility,
        h,
        tol.entropy,
    ));
    report.pointer_reading = Some(reading);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::parse_scenario;
    use crate::info::VerdictStatus;

    fn scenario(state: &str, instrument: &str) -> Scenario {
        parse_scenario(&format!(
            r#"{{"object_dim": 2, "observable": {{"kind": "pauli_z"}}, "state": {state}, "instrument": {instrument}}}"#
        ))
        .unwrap()
    }

    #[test]
    fn ideal_z_on_plus() {
        let r = run_pipeline(
            &scenario(r#"{"kind": "uniform"}"#, r#"{"kind": "ideal"}"#),
            &Tolerances::default(),
        );
        assert!(r.passed, "{r:#?}");
        assert_eq!(r.exit_code(), 0);
        assert!(r.probabilities.iter().all(|p| (p - 0.5).abs() < 1e-15));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(r.schmidt_coefficients.iter().all(|c| (c - h).abs() < 1e-12));
        assert!((r.entropies.as_ref().unwrap().entanglement.unwrap() - 1.0).abs() < 1e-12);
        let got: Vec<&str> = r.verdicts.iter().map(|v| v.label.as_str()).collect();
        assert_eq!(got, labels::ALL);
    }

    #[test]
    fn ideal_z_on_eigenstate() {
        let r = run_pipeline(
            &scenario(r#"{"kind": "basis", "index": 0}"#, r#"{"kind": "ideal"}"#),
            &Tolerances::default(),
        );
        assert!(r.passed, "{r:#?}");
        assert_eq!(r.schmidt_coefficients.len(), 1);
        assert!(r.entropies.unwrap().entanglement.unwrap().abs() < 1e-12);
    }

    #[test]
    fn swap_instrument_is_not_applicable() {
        let swap = r#"{"kind": "custom", "transformers": [
            [[[0, 0], [1, 0]], [[0, 0], [0, 0]]],
            [[[0, 0], [0, 0]], [[1, 0], [0, 0]]]]}"#;
        let r = run_pipeline(&scenario(r#"{"kind": "uniform"}"#, swap), &Tolerances::default());
        assert!(!r.passed);
        assert_eq!(r.exit_code(), 1);
        assert!(r.error.is_none());
        let by = |l: &str| r.verdicts.iter().find(|v| v.label == l).unwrap().status;
        assert_eq!(by(labels::PRC), VerdictStatus::Pass);
        assert_eq!(by(labels::KRAUS), VerdictStatus::Pass);
        assert_eq!(by(labels::REPEATABILITY), VerdictStatus::Fail);
        for l in &labels::ALL[3..] {
            assert_eq!(by(l), VerdictStatus::NotApplicable, "{l}");
        }
    }

    #[test]
    fn random_instances_pass() {
        for seed in 0..20 {
            let sc = crate::harness::generate_random_instance(seed, 6, 4);
            let r = run_pipeline(&sc, &Tolerances::default());
            assert!(r.passed, "seed {seed}: {r:#?}");
        }
    }

    #[test]
    fn tight_tolerance_fails_without_error() {
        let sc = crate::harness::generate_random_instance(3, 6, 4);
        let r = run_pipeline(&sc, &Tolerances::uniform(0.0));
        assert!(r.error.is_none());
        assert_eq!(r.exit_code(), if r.passed { 0 } else { 1 });
    }
}
