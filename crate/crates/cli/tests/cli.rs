use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use setcat::catalog::category;
use setcat::equiv::find_equivalence;
use setcat::io::{parse_category, serialize_category};

fn setcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_setcat")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn toric_with_f_twist(twist: Value) -> String {
    let mut v: Value = serde_json::from_str(&serialize_category(category("toric_code"))).unwrap();
    v["twists"]["f"] = twist;
    v.to_string()
}

#[test]
fn condense_toric_on_e_is_vec() {
    let out = setcat(&["--format", "json", "condense", "toric_code", "--bosons", "1,e"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    for key in [
        "input_name",
        "input_labels",
        "bosons",
        "result",
        "deconfined",
        "confined",
        "orbits",
        "splittings",
        "provenance",
        "alternatives",
        "ambiguity_flags",
        "embedding",
    ] {
        assert!(v.get(key).is_some(), "missing `{key}`");
    }
    let result = parse_category(&v["result"].to_string()).unwrap();
    assert!(find_equivalence(&result, category("vec"), None).unwrap().is_some());
    assert_eq!(v["confined"], serde_json::json!(["m", "f"]));
}

#[test]
fn relprod_of_toric_with_itself() {
    let out = setcat(&["--format", "json", "relprod", "toric_code", "toric_code", "--emb", "toric_code.e", "--emb", "toric_code.e"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    let result = parse_category(&v["result"].to_string()).unwrap();
    assert!(find_equivalence(&result, category("toric_code"), None).unwrap().is_some());
    assert_eq!(v["orbits"].as_array().unwrap().len(), 4);
    assert_eq!(v["splittings"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(v["provenance"].as_array().unwrap().len(), 4);
    assert!(v["embedding"].is_object());
}

#[test]
fn unit_law_verdicts() {
    let out = setcat(&["verify", "unit-law", "toric_code", "--emb", "toric_code.e"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).ends_with("verdict: true\n"));
    let out = setcat(&["--format", "json", "verify", "unit-law", "double_z3", "--emb", "double_z3.canonical"]);
    assert_eq!(json(&out)["verdict"], "true");
}

#[test]
fn files_on_disk_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let toric = write(dir.path(), "toric.json", &serialize_category(category("toric_code")));
    let emb = dir.path().join("d3.emb.json");
    let d3 = dir.path().join("d3.json");
    let out = setcat(&["--format", "json", "--out", d3.to_str().unwrap(), "double", "--group", "3", "--emb-out", emb.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = setcat(&["verify", "unit-law", d3.to_str().unwrap(), "--emb", emb.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = setcat(&["validate", &toric]);
    assert_eq!(code(&out), 0);
}

#[test]
fn rejected_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let float = write(dir.path(), "float.json", &toric_with_f_twist(serde_json::json!(0.5)));
    let out = setcat(&["validate", &float]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("floats"), "{}", stderr(&out));

    let wrong = write(dir.path(), "wrong.json", &toric_with_f_twist(serde_json::json!("1/4")));
    let out = setcat(&["validate", &wrong]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("S-matrix"), "{}", stderr(&out));

    let out = setcat(&["condense", "ising", "--bosons", "1,sigma"]);
    assert_eq!(code(&out), 2);
    let out = setcat(&["relprod", "toric_code", "toric_code", "--emb", "toric_code.e"]);
    assert_eq!(code(&out), 2);
    let out = setcat(&["verify", "unit-law", "toric_code", "--emb", "double_z2.canonical"]);
    assert_eq!(code(&out), 2, "embedding aimed at another category");
}

#[test]
fn symmetric_toric_fusion_validates() {
    let dir = tempfile::tempdir().unwrap();
    let sym = write(dir.path(), "sym.json", &toric_with_f_twist(serde_json::json!("0")));
    assert_eq!(code(&setcat(&["validate", &sym])), 0);
    let out = setcat(&["--format", "json", "center", &sym]);
    assert_eq!(json(&out)["symmetric"], true);
}

#[test]
fn false_verdict_exits_with_one() {
    let out = setcat(&["equiv", "ising", "ising_rev"]);
    assert_eq!(code(&out), 1);
    let out = setcat(&["equiv", "toric_code", "toric_code", "--emb", "toric_code.e", "--emb", "toric_code.m"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("e -> m"));
}

#[test]
fn exhausted_budget_is_a_fault() {
    let dir = tempfile::tempdir().unwrap();
    let is = category("ising");
    let sq = write(dir.path(), "sq.json", &serialize_category(&is.deligne_product(&is.reverse_braiding())));
    let out = setcat(&["condense", &sq, "--bosons", "(1,1),(psi,psi)", "--budget", "1"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("splitting-budget"), "{}", stderr(&out));
    let out = setcat(&["condense", &sq, "--bosons", "(1,1),(psi,psi)"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn seeded_reports_are_byte_identical() {
    let args = ["--format", "json", "verify", "pointed-oracle", "--seed", "7", "--cases", "12", "--max-order", "32"];
    let (a, b) = (setcat(&args), setcat(&args));
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_setcat")).args(args).env("SETCAT_THREADS", "1").output().unwrap();
    assert_eq!(out.stdout, a.stdout);
}

#[test]
fn json_keys_are_sorted_and_outputs_reparse() {
    let out = setcat(&["--format", "json", "product", "semion", "antisemion"]);
    let text = stdout(&out);
    let p = parse_category(&text).unwrap();
    assert_eq!(p.rank(), 4);
    let v: Value = serde_json::from_str(&text).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(p.labels(), ["(1,1)", "(1,sbar)", "(s,1)", "(s,sbar)"]);
}

#[test]
fn remaining_verifiers() {
    for args in [
        &["verify", "stacking", "toric_code", "double_semion", "--emb", "toric_code.m", "--emb", "double_semion.b"][..],
        &["verify", "nondegeneracy", "double_z2", "double_semion", "--emb", "double_z2.canonical", "--emb", "double_semion.b"],
        &["verify", "centralizer", "double_z4", "--emb", "double_z4.canonical"],
        &["centralizer", "toric_code", "--emb", "toric_code.e"],
        &["info", "fibonacci"],
        &["rep", "--group", "2,2"],
    ] {
        let out = setcat(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", stderr(&out));
    }
    let out = setcat(&["verify", "nondegeneracy", "rep_z2", "rep_z2", "--emb", "rep_z2.id", "--emb", "rep_z2.id"]);
    assert_eq!(code(&out), 2, "degenerate inputs are rejected");
}
