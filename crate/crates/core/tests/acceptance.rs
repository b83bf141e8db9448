//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria 2 and 7 contain checks that no correct implementation meets
//! (see `KNOWN_FAILURES`); they are still run in full and reported as FAIL.
//! The process exits non-zero only when some other criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rdperm::verify::{self, CriterionReport};
use rdperm::Execution;

/// Criteria with a check that cannot pass, and the check in question.
const KNOWN_FAILURES: [(u32, &str); 2] = [
    (2, "the listed eight sets repeat {1,3}; deletion-insertion gives seven distinct sets"),
    (7, "for uniform orders P(|R|/ln n ∈ [0.7, 1.3]) is about 0.62 at n = 10^4, not 0.9"),
];

fn print(report: &CriterionReport, seconds: f64) {
    println!("{}", report.status_line());
    eprintln!("  ({seconds:.1} s)");
    if !report.passed {
        for d in &report.details {
            println!("    {d}");
        }
        if let Some((_, why)) = KNOWN_FAILURES.iter().find(|(id, _)| *id == report.id) {
            println!("    known: {why}");
        }
    }
}

fn main() -> ExitCode {
    let exec = Execution::default();
    let steps: [fn(Execution) -> rdperm::Result<CriterionReport>; 8] = [
        |_| verify::exact_combinatorics(),
        |_| verify::projection_closure(),
        |_| verify::position_distributions(),
        |_| verify::dual_algorithm(),
        verify::boundary,
        verify::lln,
        verify::records,
        |_| verify::structures(),
    ];
    let mut reports = Vec::new();
    for step in steps {
        let start = Instant::now();
        let report = step(exec).expect("criterion ran to completion");
        print(&report, start.elapsed().as_secs_f64());
        reports.push(report);
    }
    let first = verify::VerifyReport { criteria: reports.clone() }.render();
    let start = Instant::now();
    let second = verify::run_all(exec).expect("second run").render();
    let identical = first == second;
    println!(
        "criterion 9: {} verify report byte-identical across two runs ({} bytes)",
        if identical { "PASS" } else { "FAIL" },
        first.len()
    );
    eprintln!("  ({:.1} s)", start.elapsed().as_secs_f64());
    let unexpected = reports
        .iter()
        .filter(|r| !r.passed && !KNOWN_FAILURES.iter().any(|(id, _)| *id == r.id))
        .count()
        + usize::from(!identical);
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
