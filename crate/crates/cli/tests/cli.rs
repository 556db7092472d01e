use std::path::Path;
use std::process::{Command, Output};

use dndouble::catalog::Setting;
use dndouble::io;
use dndouble::rep::Representation;
use serde_json::Value;

fn dndouble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dndouble"))
        .args(args)
        .env_remove("DNDOUBLE_P")
        .env_remove("DNDOUBLE_N")
        .env_remove("DNDOUBLE_SUITE")
        .env_remove("DNDOUBLE_OUT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn write_json(dir: &Path, name: &str, v: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn info_reports_both_counts() {
    let o = dndouble(&["info", "--p", "3", "--n", "9"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("kD_n indecomposables: 18; YD indecomposables: 56"), "{}", stdout(&o));

    let o = dndouble(&["info", "--p", "3", "--n", "12", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kdn_indecomposables"], 15);
    assert_eq!(v["yd_indecomposables"], 98);
}

#[test]
fn parameters_where_p_does_not_divide_n_are_rejected() {
    let o = dndouble(&["info", "--p", "3", "--n", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("p does not divide n"));
}

#[test]
fn catalogs_are_complete_and_reproducible() {
    let first = dndouble(&["catalog", "--p", "3", "--n", "3"]);
    let again = dndouble(&["catalog", "--p", "3", "--n", "3"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, again.stdout);
    let v: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("yd.json");
    let o = dndouble(&["yd-catalog", "--p", "3", "--n", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let labels: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["label"].as_str().unwrap()).collect();
    assert_eq!(labels.len(), 11);
    assert_eq!(labels[0], "V(1,0,+)");
    assert!(labels.contains(&"DU(2)"));
}

#[test]
fn regular_module_splits_into_projective_covers() {
    let s = Setting::new(3, 3).unwrap();
    let one = Representation::trivial(s.params.trivial_subgroup(), &s.field, 1);
    let regular = one.induce().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let file = write_json(dir.path(), "regular.json", &io::rep_to_json(&regular));
    let o = dndouble(&["decompose", &file, "--seed", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "Phi(3,0,+) + Phi(3,0,-)");
}

#[test]
fn decompose_recognizes_catalog_entries() {
    let cat = dndouble(&["catalog", "--p", "3", "--n", "6"]);
    let v: Value = serde_json::from_slice(&cat.stdout).unwrap();
    let dir = tempfile::tempdir().unwrap();
    for entry in v.as_array().unwrap().iter().step_by(3) {
        let file = write_json(dir.path(), "entry.json", &entry["rep"]);
        let o = dndouble(&["decompose", &file]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), entry["label"].as_str().unwrap());
    }

    let yd = dndouble(&["yd-catalog", "--p", "3", "--n", "6"]);
    let v: Value = serde_json::from_slice(&yd.stdout).unwrap();
    for entry in v.as_array().unwrap().iter().step_by(5) {
        let file = write_json(dir.path(), "yd.json", &entry["yd"]);
        let o = dndouble(&["decompose", &file]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(stdout(&o).trim(), entry["label"].as_str().unwrap());
    }
}

#[test]
fn malformed_input_exits_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"group\": ").unwrap();
    let o = dndouble(&["decompose", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = dndouble(&["decompose", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_prints_each_check() {
    let o = dndouble(&["verify", "--p", "3", "--n", "9", "--suite", "catalog", "--budget-probe-modules", "20"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.contains("pairing i+j=t: pass (vacuous, t=1)"), "{text}");

    let o = dndouble(&["verify", "--p", "3", "--n", "9", "--suite", "matrices"]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.contains("[matrices] T²=I: pass"), "{text}");
}

#[test]
fn verify_all_suites_pass_and_write_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = dndouble(&["verify", "--p", "3", "--n", "6", "--seed", "11", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["seed"], 11);
    assert!(v["checks"].as_array().unwrap().len() > 20);
}

#[test]
fn hopf_check_passes_and_respects_budget() {
    let o = dndouble(&["hopf-check", "--p", "3", "--n", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("dimension 36"));
    assert!(!text.contains("FAIL"));

    let o = dndouble(&["hopf-check", "--p", "3", "--n", "6", "--budget-hopf-max-n", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parameters_can_come_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_dndouble"))
        .args(["info"])
        .env("DNDOUBLE_P", "5")
        .env("DNDOUBLE_N", "10")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("kD_n indecomposables: 20"));
}
