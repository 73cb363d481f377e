use rootgrr::verify::{run, Suite};

fn assert_suite(suite: Suite) {
    for report in run(suite) {
        for check in &report.checks {
            assert!(check.passed, "{}::{} failed: {}", report.suite, check.name, check.detail);
        }
    }
}

#[test]
fn bernoulli_suite_passes() {
    assert_suite(Suite::Bernoulli);
}

#[test]
fn cyclotomic_suite_passes() {
    assert_suite(Suite::Cyclotomic);
}

#[test]
fn taut_suite_passes() {
    assert_suite(Suite::Taut);
}

#[test]
fn examples_suite_passes() {
    assert_suite(Suite::Examples);
}

#[test]
fn suite_names_round_trip() {
    for name in ["bernoulli", "cyclotomic", "taut", "examples", "all"] {
        let suite: Suite = name.parse().unwrap();
        assert_eq!(suite.name(), name);
    }
    assert!("nope".parse::<Suite>().is_err());
}

#[test]
fn report_json_shape() {
    let report = &run(Suite::Bernoulli)[0];
    let value = report.to_json();
    assert_eq!(value["suite"], "bernoulli");
    assert_eq!(value["passed"], true);
    assert!(value["checks"].as_array().unwrap().len() >= 5);
}
