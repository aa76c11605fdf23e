use planar_oracle::harness::{verify_suite, Fault, Report, Scope, GROUPS};
use serde_json::Value;

fn keys(v: &Value) -> Vec<String> {
    let mut k: Vec<String> = v.as_object().unwrap().keys().cloned().collect();
    k.sort();
    k
}

#[test]
fn empty_scope_gives_an_empty_passing_report() {
    let r = verify_suite(&Scope::empty());
    assert!(r.checks.is_empty());
    assert!(r.passed());
    assert_eq!(r.version, Report::VERSION);
}

#[test]
fn default_seed_passes_every_group() {
    let r = verify_suite(&Scope::all(42));
    for c in r.failures() {
        eprintln!("{} on {}: {}", c.name, c.instance, c.detail);
    }
    assert!(r.passed());
    for g in GROUPS {
        assert!(r.checks.iter().any(|c| c.name.starts_with(g)), "no checks for {g}");
    }
    assert!(r.checks.iter().all(|c| c.seed == 42));
}

#[test]
fn injected_tie_is_caught() {
    let mut scope = Scope::empty();
    scope.planar = true;
    scope.seed = 42;
    scope.fault = Some(Fault::FlipTiebreak);
    let r = verify_suite(&scope);
    assert!(!r.passed());
    assert!(r.failures().all(|c| c.name == "planar.uniqueness"));
}

#[test]
fn report_json_matches_golden_shape() {
    let golden: Value = serde_json::from_str(include_str!("golden/report_shape.json")).unwrap();
    let mut scope = Scope::empty();
    scope.enable("planar");
    let r = verify_suite(&scope);
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["version"], golden["version"]);
    assert_eq!(Value::from(keys(&v)), golden["report_keys"]);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(Value::from(keys(c)), golden["check_keys"]);
    }
    let back: Report = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}

#[test]
fn same_seed_same_outcomes() {
    let mut scope = Scope::empty();
    scope.enable("trees");
    scope.seed = 7;
    let strip = |r: Report| r.checks.into_iter().map(|c| (c.name, c.instance, c.passed, c.detail)).collect::<Vec<_>>();
    assert_eq!(strip(verify_suite(&scope)), strip(verify_suite(&scope)));
}
