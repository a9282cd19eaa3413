//! The fourteen acceptance criteria at the full level, one line each.
//!
//! Lines go straight to stderr so they show up without `--nocapture`.

use std::io::Write;

use permadiag_cli::{run_criterion, Level};

#[test]
fn acceptance_criteria() {
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for k in 1..=14u8 {
        let report = run_criterion(k, Level::Full).expect("criterion exists");
        let _ = writeln!(err, "{}", report.summary_line());
        for c in report.failures() {
            let _ = writeln!(
                err,
                "    FAIL {} {}: expected {}, got {}",
                c.id, c.what, c.expected, c.got
            );
        }
        for n in &report.notes {
            let _ = writeln!(err, "    note: {n}");
        }
        if !report.passed() {
            failed.push(k);
        }
    }
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
