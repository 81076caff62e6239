use std::fmt::Write;

use super::batch::BatchReport;
use super::pipeline::VerificationReport;
use super::scenario::{InstrumentSpec, ObservableSpec, StateSpec, Verbosity};
use crate::info::{TheoremVerdict, VerdictStatus};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

fn status_word(s: VerdictStatus) -> &'static str {
    match s {
        VerdictStatus::Pass => "PASS",
        VerdictStatus::Fail => "FAIL",
        VerdictStatus::NotApplicable => "N/A",
    }
}

fn list(xs: &[f64]) -> String {
    if xs.is_empty() {
        return "-".to_string();
    }
    xs.iter().map(|x| format!("{x:.12}")).collect::<Vec<_>>().join(" ")
}

fn verdict_line(out: &mut String, v: &TheoremVerdict) {
    let _ = writeln!(
        out,
        "  {:<4} {:<44} deviation {:.3e}  tolerance {:.1e}",
        status_word(v.status),
        v.label,
        v.deviation,
        v.tolerance
    );
}

/// Parses the verdict lines of a text report back into `(label, status)`.
pub fn text_verdicts(text: &str) -> Vec<(String, VerdictStatus)> {
    text.lines()
        .filter_map(|line| {
            let mut words = line.split_whitespace();
            let status = match words.next()? {
                "PASS" => VerdictStatus::Pass,
                "FAIL" => VerdictStatus::Fail,
                "N/A" => VerdictStatus::NotApplicable,
                _ => return None,
            };
            Some((words.next()?.to_string(), status))
        })
        .collect()
}

fn describe(r: &VerificationReport) -> String {
    let sc = &r.scenario;
    let obs = match &sc.observable {
        ObservableSpec::PauliX => "pauli_x".to_string(),
        ObservableSpec::PauliY => "pauli_y".to_string(),
        ObservableSpec::PauliZ => "pauli_z".to_string(),
        ObservableSpec::Diag { values } => format!("diag {values:?}"),
        ObservableSpec::Matrix { .. } => "matrix".to_string(),
    };
    let state = match &sc.state {
        StateSpec::Amplitudes { .. } => "amplitudes".to_string(),
        StateSpec::Basis { index } => format!("basis {index}"),
        StateSpec::Uniform => "uniform".to_string(),
    };
    let instrument = match &sc.instrument {
        InstrumentSpec::Ideal => "ideal".to_string(),
        InstrumentSpec::Repeatable { seed } => format!("repeatable (seed {seed})"),
        InstrumentSpec::Custom { transformers } => format!("custom ({} transformers)", transformers.len()),
    };
    format!(
        "dim {}, observable {obs}, state {state}, instrument {instrument}",
        sc.object_dim
    )
}

pub fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", describe(r));
    let _ = writeln!(out, "probabilities: {}", list(&r.probabilities));
    let _ = writeln!(out, "schmidt coefficients: {}", list(&r.schmidt_coefficients));
    if let Some(e) = &r.entropies {
        let _ = writeln!(
            out,
            "entropies (bits): S1 {:.12}  S2 {:.12}  S12 {:.3e}  I12 {:.12}",
            e.s1, e.s2, e.s12, e.mutual_information
        );
        if let Some(ent) = e.entanglement {
            let _ = writeln!(out, "entanglement (bits): {ent:.12}");
        }
    }
    if r.scenario.options.verbosity == Verbosity::Full {
        let _ = writeln!(out, "detectable outcomes: {:?}", r.detectable_outcomes);
        if let Some(p) = &r.pointer_reading {
            let _ = writeln!(
                out,
                "pointer reading: S1 {:.12}  S2 {:.12}  S3 {:.12}  E_C {:.12}",
                p.marginal_entropies[0], p.marginal_entropies[1], p.marginal_entropies[2], p.tripartite_incompatibility
            );
        }
    }
    let _ = writeln!(out, "verdicts:");
    for v in &r.verdicts {
        verdict_line(&mut out, v);
    }
    if let Some(e) = &r.error {
        let _ = writeln!(out, "error in stage {:?}: {}", e.stage, e.message);
    }
    if let Some(ms) = r.duration_ms {
        let _ = writeln!(out, "duration: {ms:.3} ms");
    }
    let _ = writeln!(out, "result: {}", if r.passed { "PASS" } else { "FAIL" });
    out
}

pub fn render_json(r: &VerificationReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

pub fn render(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Text => render_text(r),
        Format::Json => render_json(r),
    }
}

pub fn render_batch(b: &BatchReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(b).expect("batch serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "batch: seeds {}..{}, d1 ≤ {}, outcomes ≤ {}",
                b.seed_start, b.seed_end, b.d1_max, b.outcomes_max
            );
            let _ = writeln!(
                out,
                "runs {}  passed {}  failed {}  errors {}",
                b.runs.len(),
                b.passed,
                b.failed,
                b.errors
            );
            for run in &b.runs {
                let status = if run.error.is_some() {
                    "ERROR"
                } else if run.failed_verdicts.is_empty() {
                    "PASS"
                } else {
                    "FAIL"
                };
                let _ = write!(
                    out,
                    "  seed {:<8} {:<5} dim {} outcomes {}",
                    run.seed, status, run.object_dim, run.outcomes
                );
                if !run.failed_verdicts.is_empty() {
                    let _ = write!(out, "  failed: {}", run.failed_verdicts.join(", "));
                }
                if let Some(e) = &run.error {
                    let _ = write!(out, "  {:?}: {}", e.stage, e.message);
                }
                out.push('\n');
            }
            if let Some(ms) = b.duration_ms {
                let _ = writeln!(out, "duration: {ms:.3} ms");
            }
            let _ = writeln!(out, "result: {}", if b.exit_code() == 0 { "PASS" } else { "FAIL" });
            out
        }
    }
}
