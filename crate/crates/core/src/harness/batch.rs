use std::ops::Range;

use serde::Serialize;

use super::generate::generate_random_instance;
use super::pipeline::{run_pipeline, StageFailure};
use super::scenario::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedRun {
    pub seed: u64,
    pub object_dim: usize,
    pub outcomes: usize,
    pub passed: bool,
    pub failed_verdicts: Vec<String>,
    pub error: Option<StageFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchReport {
    pub seed_start: u64,
    pub seed_end: u64,
    pub d1_max: usize,
    pub outcomes_max: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub runs: Vec<SeedRun>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<f64>,
}

impl BatchReport {
    /// 3 if any run hit a stage error, else 1 if any verdict failed, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.errors > 0 {
            3
        } else if self.failed > 0 {
            1
        } else {
            0
        }
    }
}

fn run_seed(seed: u64, d1_max: usize, outcomes_max: usize, tol: &Tolerances) -> SeedRun {
    let sc = generate_random_instance(seed, d1_max, outcomes_max);
    let report = run_pipeline(&sc, tol);
    SeedRun {
        seed,
        object_dim: sc.spec.object_dim,
        outcomes: sc.observable.len(),
        passed: report.passed,
        failed_verdicts: report
            .verdicts
            .iter()
            .filter(|v| v.failed())
            .map(|v| v.label.clone())
            .collect(),
        error: report.error,
    }
}

fn summarize(seeds: Range<u64>, d1_max: usize, outcomes_max: usize, runs: Vec<SeedRun>) -> BatchReport {
    let errors = runs.iter().filter(|r| r.error.is_some()).count();
    let failed = runs
        .iter()
        .filter(|r| r.error.is_none() && !r.failed_verdicts.is_empty())
        .count();
    BatchReport {
        seed_start: seeds.start,
        seed_end: seeds.end,
        d1_max,
        outcomes_max,
        passed: runs.iter().filter(|r| r.passed).count(),
        failed,
        errors,
        runs,
        duration_ms: None,
    }
}

/// One instance per seed in the half-open range, in seed order.
pub fn run_batch_sequential(seeds: Range<u64>, d1_max: usize, outcomes_max: usize, tol: &Tolerances) -> BatchReport {
    let runs = seeds.clone().map(|s| run_seed(s, d1_max, outcomes_max, tol)).collect();
    summarize(seeds, d1_max, outcomes_max, runs)
}

/// Same result as [`run_batch_sequential`], seeds evaluated on the rayon pool.
#[cfg(feature = "parallel")]
pub fn run_batch_parallel(seeds: Range<u64>, d1_max: usize, outcomes_max: usize, tol: &Tolerances) -> BatchReport {
    use rayon::prelude::*;
    let runs = seeds
        .clone()
        .into_par_iter()
        .map(|s| run_seed(s, d1_max, outcomes_max, tol))
        .collect();
    summarize(seeds, d1_max, outcomes_max, runs)
}

pub fn run_batch(seeds: Range<u64>, d1_max: usize, outcomes_max: usize, tol: &Tolerances) -> BatchReport {
    #[cfg(feature = "parallel")]
    return run_batch_parallel(seeds, d1_max, outcomes_max, tol);
    #[cfg(not(feature = "parallel"))]
    return run_batch_sequential(seeds, d1_max, outcomes_max, tol);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batch_passes() {
        let b = run_batch(0..12, 5, 3, &Tolerances::default());
        assert_eq!(b.runs.len(), 12);
        assert_eq!(b.passed, 12);
        assert_eq!(b.exit_code(), 0);
        assert!(b.runs.windows(2).all(|w| w[0].seed < w[1].seed));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        let tol = Tolerances::default();
        assert_eq!(
            run_batch_parallel(3..11, 6, 4, &tol),
            run_batch_sequential(3..11, 6, 4, &tol)
        );
    }
}
