//! Acceptance suite: one pass/fail line per criterion, full grids.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use hyperturan_core::verify::{run_criterion, Grid, CRITERIA};

const SEED: u64 = 1;

/// Wall-clock limits per criterion; the rest are unbounded.
fn time_limit(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(1)),
        2 => Some(Duration::from_secs(5)),
        4 => Some(Duration::from_secs(600)),
        8 => Some(Duration::from_secs(1)),
        _ => None,
    }
}

fn verify_output() -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperturan"))
        .args(["verify", "--grid", "small", "--seed", "7", "--reproducible", "--format", "json"])
        .output()
        .expect("run hyperturan verify");
    out.stdout
}

fn main() -> ExitCode {
    let mut failed = 0;
    for &(id, name) in &CRITERIA {
        let start = Instant::now();
        let report = run_criterion(id, Grid::Full, SEED);
        let elapsed = start.elapsed();
        let mut passed = report.passed;
        let mut detail = report.summary.clone();
        if let Some(limit) = time_limit(id) {
            if elapsed > limit {
                passed = false;
                detail.push_str(&format!("; took {elapsed:?}, limit {limit:?}"));
            }
        }
        if id == 10 {
            let a = verify_output();
            let b = verify_output();
            let same = !a.is_empty() && a == b;
            passed &= same;
            detail.push_str(if same {
                "; CLI reports byte-identical"
            } else {
                "; CLI reports differ"
            });
        }
        println!(
            "criterion {id:>2} {name}: {} ({detail}) [{} ms]",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_millis()
        );
        for f in &report.failure_samples {
            println!("    {f}");
        }
        if !passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
