use std::process::{Command, Output};

fn graphcx(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    Command::new(env!("CARGO_BIN_EXE_graphcx")).args(args).env("GRAPHCX_CACHE", dir.path()).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = graphcx(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn basis_summary() {
    assert_eq!(stdout(&["basis", "--variant", "gc1tp", "--g", "3", "--parity", "odd", "--W", "1", "--summary"]), "E=0: 20, E=1: 6\n");
    assert_eq!(stdout(&["basis", "--variant", "gc1", "--g", "0", "--W", "1"]), "");
}

#[test]
fn basis_json_lists_encodings() {
    let text = stdout(&["--json", "basis", "--variant", "gc1tp", "--g", "1", "--W", "1"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["spec"]["g"], 1);
    let total: usize = doc["strata"].as_object().unwrap().values().map(|v| v.as_array().unwrap().len()).sum();
    assert!(total > 0);
}

#[test]
fn family_basis() {
    // W + M must be even for a family complex to be nonempty
    assert_eq!(stdout(&["basis", "--family", "J", "--M", "2", "--W", "1", "--summary"]), "");
    assert!(!stdout(&["basis", "--family", "J", "--M", "2", "--W", "2", "--summary"]).is_empty());
}

#[test]
fn cohomology_degrees() {
    let spec = ["cohomology", "--variant", "gc1tp", "--g", "3", "--parity", "odd", "--W", "1"];
    let with = |extra: &[&str]| stdout(&[&spec[..], extra].concat());
    assert_eq!(with(&["--m", "1"]), "degree 0: 14\n");
    assert_eq!(with(&["--m", "3"]), "degree -2: 14\n");
    assert_eq!(with(&["--m", "1", "--e-number"]), "E=0: 14\n");
    assert_eq!(stdout(&["cohomology", "--variant", "gc1", "--g", "0", "--W", "1", "--m", "1"]), "");
    assert!(!graphcx(&[&spec[..], &["--m", "2"]].concat()).status.success());
}

#[test]
fn weight1_table_even() {
    let t = stdout(&["table", "weight1", "--parity", "even"]);
    assert_eq!(t.lines().next(), Some("| | g=0 | g≥1 |"));
    assert_eq!(t.lines().count(), 5);
    let csv = stdout(&["table", "weight1", "--parity", "odd", "--format", "csv"]);
    assert!(csv.contains("gr1 H(gc1tp),0,V(λ1)[m-2],0,V(λ3)[m-1]"));
}

#[test]
fn verify_exit_codes() {
    let ok = graphcx(&["verify", "weight1_tables", "--quick"]);
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS weight1_tables"));
    assert!(!graphcx(&["verify", "nosuch"]).status.success());
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    stdout(&["verify", "invariant_theory", "--quick", "--report", path.to_str().unwrap()]);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["runs"][0]["name"], "invariant_theory");
}
