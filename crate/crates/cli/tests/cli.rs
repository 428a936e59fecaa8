use std::process::{Command, Output};

use serde_json::Value;

fn nksl2r(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nksl2r"))
        .args(args)
        .env("NKSL2R_SEED", "42")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn invalid_arguments_exit_with_two() {
    for args in [
        &["verify", "II_IIa", "--grid", "2x5"][..],
        &["verify", "II_IIa", "--grid", "five"],
        &["verify", "II_IIa", "--h", "0"],
        &["verify", "II_IIa", "--h", "0.5"],
        &["verify", "no_such_entry"],
        &["table", "--step-deg", "7"],
        &["classify"],
        &["connection"],
        &["identities", "--samples", "0"],
        &["classify", "--phi", "1", "--phi-deg", "30"],
    ] {
        let out = nksl2r(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(nksl2r(&["--help"]).status.code(), Some(0));
}

#[test]
fn classify_zero() {
    let out = nksl2r(&["classify", "--phi", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["data"]["types"], serde_json::json!(["II", "II"]));
    assert_eq!(v["data"]["entry"], "II_IIa");
    assert_eq!(v["meta"]["command"], "classify");
}

#[test]
fn classify_and_verify_agree_on_the_angle() {
    let c = json(&nksl2r(&["classify", "--phi-deg", "120"]));
    let entry = c["data"]["entry"].as_str().unwrap().to_string();
    let out = nksl2r(&["verify", &entry]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], true);
    let phi_value = v["checks"].as_array().unwrap().iter().find(|k| k["name"] == "phi_value").unwrap();
    assert_eq!(phi_value["pass"], true);
}

#[test]
fn main_surface_verifies() {
    let out = nksl2r(&["verify", "main_thm1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn seed_fixes_the_identity_report() {
    let a = nksl2r(&["identities", "--samples", "20"]);
    let b = nksl2r(&["identities", "--samples", "20"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["meta"]["config"]["seed"], 42);
    let c = nksl2r(&["identities", "--samples", "20", "--seed", "7"]);
    assert_eq!(json(&c)["meta"]["config"]["seed"], 7);
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = nksl2r(&["table", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "phi_deg,phi,psi,xi,type_p,type_q");
    assert_eq!(lines.len(), 14);
    assert!(lines[1].ends_with(",II,II"));
    assert!(lines[2].ends_with(",I,IV"));
}

#[test]
fn check_reports_render_as_csv() {
    let out = nksl2r(&["verify", "I_IV_b", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("name,max_residual,tolerance,pass,samples\n"));
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(3) == Some("true")));
}

#[test]
fn connection_table_has_twelve_rows() {
    let v = json(&nksl2r(&["connection", "--phi-deg", "90"]));
    assert_eq!(v["data"].as_array().unwrap().len(), 12);
    assert_eq!(v["verdict"], true);
}

#[test]
fn perturbed_parameters_fail_verification() {
    // a free parameter stays a valid surface; an angle-bound one does not
    let out = nksl2r(&["verify", "iso_I_a", "--lambda", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let out = nksl2r(&["verify", "I_IV_b", "--phi-deg", "30", "--lambda", "1.6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"], false);
}
