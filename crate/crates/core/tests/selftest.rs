use findim_core::selftest::{run_suite, SuiteConfig};

#[test]
fn small_suite_passes() {
    let cfg = SuiteConfig {
        seed: 7,
        algebras: 6,
        modules_per_algebra: 6,
        sequences_per_algebra: 6,
        ..SuiteConfig::default()
    };
    let report = run_suite(&cfg).unwrap();
    for (name, t) in &report.checks {
        assert_eq!(t.failed, 0, "{name}: {:?}", t.failures);
    }
    let it = report.group("it.");
    assert!(it.skipped * 10 < it.total(), "{it:?}");
    assert_eq!(report.modules, 36);
    assert!(report.checks.len() > 30);
}
