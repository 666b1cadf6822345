use quiverkit::homol::DEFAULT_CAP;
use quiverkit::scenario::{run_scenario, Status, SCENARIOS};
use quiverkit::{Error, Field};

#[test]
fn every_scenario_passes() {
    for id in SCENARIOS {
        let r = run_scenario(id, Field::Rationals, DEFAULT_CAP).unwrap();
        print!("{}", r.to_table());
        assert_eq!(r.status, Status::Pass, "{id}");
        assert!(!r.assertions.is_empty());
    }
}

#[test]
fn scenario_sizes() {
    let r = run_scenario("example-nakayama-566", Field::Rationals, DEFAULT_CAP).unwrap();
    assert!(r.assertions.len() >= 12);
    assert!(r.assertions.iter().any(|a| a.description == "non-projective GP" && a.computed == "[S2^[3]]"));
    let r = run_scenario("equ1-suite", Field::Rationals, DEFAULT_CAP).unwrap();
    assert_eq!(r.assertions.len(), 9);
}

#[test]
fn reports_are_deterministic() {
    let a = run_scenario("equ1-suite", Field::Rationals, DEFAULT_CAP).unwrap();
    let b = run_scenario("equ1-suite", Field::Rationals, DEFAULT_CAP).unwrap();
    assert_eq!(a.to_json_untimed(), b.to_json_untimed());
    let json = a.to_json();
    let pos: Vec<usize> = ["\"scenario\"", "\"assertions\"", "\"status\"", "\"version\"", "\"elapsed_ms\""]
        .iter()
        .map(|k| json.find(k).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["assertions"].as_array().unwrap().len(), 9);
}

#[test]
fn unknown_scenario() {
    assert!(matches!(run_scenario("nope", Field::Rationals, 4), Err(Error::UnknownScenario(_))));
}
