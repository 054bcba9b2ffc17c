use std::process::{Command, Output};

use serde_json::Value;

fn sphinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("one JSON document")
}

#[test]
fn icosahedral_space_has_one_hyperelliptic_class() {
    let o = sphinv(&["classify", "F9(1)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let d = json(&o);
    let reports = d["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["extension"], "(C4/C4,I*/I*)");
    assert_eq!(reports[0]["hyperelliptic"], true);
    assert_eq!(reports[0]["fibration"]["euler"], "-1/15");
    assert_eq!(d["verification"]["passed"], true);
}

#[test]
fn quaternion_space_has_one_free_class() {
    let o = sphinv(&["classify", "F2(1,2)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let d = json(&o);
    let reports = d["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    let free: Vec<&Value> = reports.iter().filter(|r| r["acts_freely"] == true).collect();
    assert_eq!(free.len(), 1);
    assert!(free[0]["extension"].as_str().unwrap().contains("D*16"), "{}", free[0]);
}

#[test]
fn text_and_json_carry_the_same_classes() {
    let text = stdout(&sphinv(&["classify", "F2(1,2)"]));
    let d = json(&sphinv(&["classify", "F2(1,2)", "--json"]));
    for r in d["reports"].as_array().unwrap() {
        assert!(text.contains(r["class"].as_str().unwrap()));
        assert!(text.contains(r["extension"].as_str().unwrap()));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(sphinv(&["classify", "F1(0,1,1,1)"]).status.code(), Some(3));
    let bad = sphinv(&["classify", "F9(x)"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position 3"));
    assert_eq!(sphinv(&["classify", "G9(1)"]).status.code(), Some(2));
    assert_eq!(sphinv(&["bogus"]).status.code(), Some(2));
}

#[test]
fn icosahedral_sweep() {
    let o = sphinv(&["sweep", "--max-order", "120", "--class", "icosahedral"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2, "{}", out);
    assert!(lines[0].starts_with("F9(1) "));
    assert!(lines[1].starts_with("summary: 1 manifolds"));
}

#[test]
fn sweep_json_is_one_document_per_spec() {
    let o = sphinv(&["sweep", "--max-order", "24", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let specs: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(specs.len() > 10);
    assert!(specs.iter().all(|d| d["schema_version"] == 1 && !d["reports"].as_array().unwrap().is_empty()));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("summary:"));
}

#[test]
fn verify_passes_and_reports_injected_fault() {
    let ok = sphinv(&["verify", "--max-order", "30", "--jobs", "2"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("PASS"));

    let bad = sphinv(&["verify", "--max-order", "30", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(1));
    let err = String::from_utf8_lossy(&bad.stderr);
    assert!(err.contains("smallest counterexample") && err.contains("free extension"), "{}", err);
}

#[test]
fn table_8_regenerates_exactly() {
    let o = sphinv(&["tables", "8", "--per-block", "6", "--max-order", "700", "--json"]);
    let d = json(&o);
    let rows = d["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["table"] == 8));
    assert!(rows.iter().any(|r| r["block"] == "F9(1)"));
    assert!(rows.iter().filter(|r| r["block"] == "F9(1)").all(|r| r["free"]["exact"] == true && r["hyperelliptic"]["exact"] == true));
}

#[test]
fn montesinos_lists_tangles_or_refibration() {
    let o = sphinv(&["montesinos", "F1(3,5,7,2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k = 1, tangles -17/35 -12/35"));
    let o = sphinv(&["montesinos", "F9(1)"]);
    assert!(stdout(&o).contains("refibration required"));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("sphinv-{}.csv", std::process::id()));
    let o = sphinv(&["classify", "F5(1)", "--csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("spec,manifold_class,class"));
}
