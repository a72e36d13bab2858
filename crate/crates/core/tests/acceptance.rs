//! Runs the full suite with the default seed and prints one line per criterion.
//! Every criterion has zero tolerance: a single failing check fails it.

use orientkit::selftest::{run_suite, CRITERIA, DEFAULT_SEED};

fn main() {
    let report = run_suite(DEFAULT_SEED).expect("suite runs");
    assert_eq!(report.criteria.len(), CRITERIA);
    for c in &report.criteria {
        println!(
            "criterion {:2} {:<58} {}  checks={} failures={} tolerance=0{}",
            c.id,
            c.name,
            if c.pass { "PASS" } else { "FAIL" },
            c.checked,
            c.failures,
            c.detail.as_deref().map(|d| format!("  first failure: {d}")).unwrap_or_default()
        );
    }
    let failed: Vec<usize> = report.criteria.iter().filter(|c| !c.pass).map(|c| c.id).collect();
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: all {CRITERIA} criteria pass");
}
