//! Runs every verification suite and prints one line per criterion.

use polylink::graph::Deadline;
use polylink::verify::{run_suite, SUITES};

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for (i, (name, title)) in SUITES.iter().enumerate() {
        let report = run_suite(name, Deadline::NONE).expect("suite runs");
        let status = if report.passed() { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {:>2}. {name}: {title} ({} cases, {} ms)",
            i + 1,
            report.cases.len(),
            report.elapsed_ms
        );
        for case in report.failures() {
            println!("         {}: {}", case.label, case.detail);
        }
        if !report.passed() {
            failed.push(*name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
