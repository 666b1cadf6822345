use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn pd_of_projective_is_zero() {
    let o = run(&["mod", "pd", &fixture("nakayama_566.qa"), "P1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn scenarios_exit_zero() {
    for id in ["example-nakayama-566", "example-dualnumbers-a2"] {
        let o = run(&["verify", id]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("overall: PASS"));
    }
}

#[test]
fn verify_json_schema() {
    let o = run(&["verify", "equ1-suite", "--json", "-"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["scenario", "assertions", "status", "version", "elapsed_ms"]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["assertions"].as_array().unwrap().len(), 9);
}

#[test]
fn reports_are_deterministic() {
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["elapsed_ms"] = serde_json::json!(0);
        serde_json::to_string(&v).unwrap()
    };
    let a = strip(run(&["verify", "example-dualnumbers-a2", "--json", "-"]));
    let b = strip(run(&["verify", "example-dualnumbers-a2", "--json", "-"]));
    assert_eq!(a, b);
    let f = fixture("nakayama_566.qa");
    let c = run(&["sg", "classify", &f, "--json", "-"]);
    let d = run(&["sg", "classify", &f, "--json", "-"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn json_to_file() {
    let dir = std::env::temp_dir().join(format!("quiverkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hom.json");
    let o = run(&["mod", "hom", &fixture("a2_path.qa"), "P1", "S2", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "mod hom");
    assert_eq!(v["result"]["hom_dim"], 0);
}

#[test]
fn failed_verification_exits_one() {
    let o = run(&[
        "endo",
        "verify",
        &fixture("nakayama_566.qa"),
        "A+S2^[3]",
        &fixture("nakayama_566_gamma_wrong.qa"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("refuted"));
    let o = run(&["endo", "verify", &fixture("nakayama_566.qa"), "A+S2^[3]", &fixture("nakayama_566_gamma.qa")]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["endo", "verify", &fixture("dual_numbers_a2.qa"), "A+eta_S1", &fixture("dual_numbers_gamma.qa")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    let o = run(&["alg", "info", &fixture("bad_unknown_arrow.qa")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6"));
    let o = run(&["alg", "info", &fixture("bad_characteristic.qa")]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["verify", "no-such-scenario"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--field", "F9", "alg", "info", &fixture("a2_path.qa")]).status.code(), Some(2));
}

#[test]
fn strict_inconclusive_exits_three() {
    let args = ["--cap", "1", "mod", "pd", &fixture("nakayama_566.qa"), "S1"];
    assert_eq!(run(&args).status.code(), Some(0));
    let mut strict = vec!["--strict"];
    strict.extend(args);
    assert_eq!(run(&strict).status.code(), Some(3));
}

#[test]
fn module_queries() {
    let f = fixture("nakayama_566.qa");
    assert_eq!(stdout(&run(&["mod", "hom", &f, "P2", "S2^[3]"])).trim(), "1");
    assert_eq!(stdout(&run(&["mod", "ext", &f, "1", "S2", "S3"])).trim(), "1");
    assert_eq!(stdout(&run(&["mod", "ext", &f, "1", "S3", "S2"])).trim(), "0");
    assert_eq!(stdout(&run(&["mod", "decompose", &f, "A+S2^[3]"])).lines().count(), 4);
    let o = run(&["gp", "test", &f, "S2^[3]"]);
    assert!(stdout(&o).starts_with("gorenstein projective"));
    let o = run(&["gp", "list", &f, "--json", "-"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["non_projective_gp"], serde_json::json!(["S2^[3]"]));
}

#[test]
fn algebra_queries() {
    let o = run(&["alg", "info", &fixture("nakayama_566.qa"), "--json", "-"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["dim"], 17);
    let o = run(&["alg", "basis", &fixture("a2_path.qa")]);
    assert_eq!(stdout(&o).lines().count(), 3);
    assert_eq!(run(&["alg", "check", &fixture("dual_numbers_a2.qa")]).status.code(), Some(0));
    let o = run(&["--field", "F7", "alg", "info", &fixture("a2_path.qa")]);
    assert!(stdout(&o).starts_with("field F7"));
}

#[test]
fn singularity_and_dual_commands() {
    let f = fixture("nakayama_566.qa");
    let o = run(&["sg", "classify", &f]);
    assert!(stdout(&o).contains("classes 6"));
    let o = run(&["sg", "perp", &f, "A+S2^[3]", "--json", "-"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["members"].as_array().unwrap().len(), 2);
    assert_eq!(stdout(&run(&["sg", "stablehom", &f, "S2^[3]", "S2^[3]"])).trim(), "1");
    let o = run(&["sg", "stabhom", &f, "S2^[3]", "S1^[1]", "--shift", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let a2 = fixture("a2_path.qa");
    assert_eq!(run(&["dual", "equ1", &a2]).status.code(), Some(0));
    assert_eq!(run(&["dual", "perp", &a2, "S1"]).status.code(), Some(0));
    let o = run(&["dual", "eta", &a2, "S1"]);
    assert!(stdout(&o).contains("dim 2 2"));
    let o = run(&["endo", "quiver", &fixture("dual_numbers_a2.qa"), "A+eta_S1", "--json", "-"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["arrows"].as_array().unwrap().len(), 4);
}
