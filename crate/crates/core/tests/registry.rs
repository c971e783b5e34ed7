use arclab::verify::{SuiteConfig, SuiteRegistry};

#[test]
fn one_suite_per_criterion() {
    let reg = SuiteRegistry::standard();
    let criteria: Vec<u8> = reg.suites().map(|s| s.criterion()).collect();
    assert_eq!(criteria, (1..=10).collect::<Vec<_>>());
    assert!(reg.get("level-two").is_some());
    assert_eq!(reg.select("all").unwrap().len(), 10);
    assert!(reg.select("nope").is_err());
}

#[test]
fn small_run_passes_and_is_deterministic() {
    let reg = SuiteRegistry::standard();
    let cfg = SuiteConfig {
        max_points: Some(6),
        seed: 3,
        samples: 10,
    };
    for name in ["counts", "rings", "frobenius", "composition", "platform", "series"] {
        let a = reg.run(name, &cfg).unwrap();
        let b = reg.run(name, &cfg).unwrap();
        assert!(a.iter().all(|o| o.passed), "{name}: {:?}", a[0].failures);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
