use std::ops::Range;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qmeas::harness::{
    parse_scenario, render, render_batch, run_batch, run_pipeline, run_pipeline_timed, Format, Tolerances,
};

/// Verify repeatable-measurement identities on scenario files or random instances.
#[derive(Parser)]
#[command(name = "qmeas", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Replace every tolerance with this value.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock duration in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the pipeline on one scenario file.
    Run { scenario: PathBuf },
    /// Run seeded random instances, one per seed in the half-open range A..B.
    Batch {
        #[arg(long, value_parser = parse_seeds)]
        seeds: Range<u64>,
        #[arg(long)]
        d1_max: usize,
        #[arg(long)]
        outcomes_max: usize,
    },
}

fn parse_seeds(s: &str) -> Result<Range<u64>, String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("seed start: {e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("seed end: {e}"))?;
    if a >= b {
        return Err(format!("empty seed range {a}..{b}"));
    }
    Ok(a..b)
}

const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("qmeas: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return fail(USAGE, format!("--tolerance must be positive and finite, got {t}"));
        }
    }
    let (text, code) = match cli.command {
        Command::Run { scenario } => {
            let source = match std::fs::read_to_string(&scenario) {
                Ok(s) => s,
                Err(e) => return fail(USAGE, format!("{}: {e}", scenario.display())),
            };
            let sc = match parse_scenario(&source) {
                Ok(sc) => sc,
                Err(e) => return fail(USAGE, format!("{}: {e}", scenario.display())),
            };
            let tol = cli.tolerance.map_or(sc.spec.options.tolerances, Tolerances::uniform);
            let report = if cli.timing {
                run_pipeline_timed(&sc, &tol)
            } else {
                run_pipeline(&sc, &tol)
            };
            (render(&report, cli.format), report.exit_code())
        }
        Command::Batch {
            seeds,
            d1_max,
            outcomes_max,
        } => {
            if d1_max < 2 || !(2..=d1_max).contains(&outcomes_max) {
                return fail(USAGE, "need --d1-max ≥ 2 and 2 ≤ --outcomes-max ≤ --d1-max");
            }
            let tol = cli.tolerance.map_or_else(Tolerances::default, Tolerances::uniform);
            let start = std::time::Instant::now();
            let mut report = run_batch(seeds, d1_max, outcomes_max, &tol);
            if cli.timing {
                report.duration_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            (render_batch(&report, cli.format), report.exit_code())
        }
    };
    match cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                return fail(INTERNAL, format!("{}: {e}", path.display()));
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code as u8)
}
