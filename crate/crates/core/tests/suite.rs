use commgraph::suite::{run_theorem_suite, SuiteOptions};

#[test]
fn theorem_suite_passes() {
    let report = run_theorem_suite(&SuiteOptions::default());
    print!("{}", report.to_table());
    assert!(report.passed());
}

#[test]
#[ignore = "slow: Sz(8) and the order 48 to 72 scans"]
fn theorem_suite_slow_passes() {
    let report = run_theorem_suite(&SuiteOptions {
        slow: true,
        ..SuiteOptions::default()
    });
    print!("{}", report.to_table());
    assert!(report.passed());
}
