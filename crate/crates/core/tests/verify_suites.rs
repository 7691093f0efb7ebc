use leafcalc::verify::{check_names, run_suite, Suite};

#[test]
fn every_suite_passes_for_several_seeds() {
    for seed in [0u64, 42, 0xdead_beef] {
        let r = run_suite(Suite::All, seed);
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "seed {seed}: {failed:?}");
        assert_eq!(r.checks.len(), check_names(Suite::All).len());
    }
}

#[test]
fn reports_are_deterministic() {
    let a = serde_json::to_string(&run_suite(Suite::Pencil, 9)).unwrap();
    let b = serde_json::to_string(&run_suite(Suite::Pencil, 9)).unwrap();
    assert_eq!(a, b);
}
