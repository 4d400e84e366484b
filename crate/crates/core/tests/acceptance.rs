//! One PASS/FAIL line per acceptance criterion, each backed by the driver
//! checks registered under that criterion, in the full scope.

use reflinv::driver::{self, Scope, Status};

#[test]
fn acceptance() {
    let checks: Vec<_> =
        driver::select("all", Scope::Full).into_iter().filter(|c| c.criterion().is_some()).collect();
    let reports = driver::run_checks(&checks, Scope::Full);
    let mut failed = Vec::new();
    for criterion in 1..=10u8 {
        let mine: Vec<_> = reports.iter().filter(|r| r.criterion == Some(criterion)).collect();
        assert!(!mine.is_empty(), "criterion {criterion} has no checks");
        let bad: Vec<_> = mine.iter().filter(|r| r.status == Status::Fail).collect();
        let secs: f64 = mine.iter().map(|r| r.runtime_secs).sum();
        if bad.is_empty() {
            println!("PASS criterion {criterion:2} ({} checks, {secs:.1}s)", mine.len());
        } else {
            failed.push(criterion);
            let names: Vec<_> = bad.iter().map(|r| r.name.as_str()).collect();
            println!("FAIL criterion {criterion:2} ({} of {} checks failed: {})", bad.len(), mine.len(), names.join(", "));
            for r in bad {
                println!("     {}", r.to_line());
            }
        }
    }
    let budget = reports.last().expect("budget report");
    println!("{}", budget.to_line());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
