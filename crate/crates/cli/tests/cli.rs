use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootcoh"))
        .args(args)
        .env_remove("ROOTCOH_DEGREE_CAP")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn enumerate_a2() {
    let out = run(&["enumerate", "--system", "A2", "--degree", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 18);
    assert!(v.as_array().unwrap().contains(&serde_json::json!([[1, 0], [0, 1]])));
}

#[test]
fn integrate_two_variable_example() {
    let out = run(&["integrate", "--cochain", &fixture("ex66.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verified"], true);
    assert_eq!(v["free_variables"]["a1"], serde_json::json!({"I": 0, "J": 0}));
    let table: Vec<(String, String)> = v["omega1"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["label"].as_str().unwrap().into(), r["text"].as_str().unwrap().into()))
        .collect();
    let want = [
        ("a1", "1"), ("a2", "1"), ("a1+a2", "1"), ("a1+2a2", "1"),
        ("-a1", "J"), ("-a2", "I"), ("-(a1+a2)", "I*J"), ("-(a1+2a2)", "I*J"),
    ];
    assert_eq!(table, want.map(|(a, b)| (a.to_string(), b.to_string())));
}

#[test]
fn check_reports_witness() {
    let out = run(&["check", "--cochain", &fixture("not_closed.json")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["closed"], false);
    assert_eq!(v["witness"]["chain"].as_array().unwrap().len(), 3);

    let out = run(&["check", "--cochain", &fixture("ex66.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["symmetry"], "symmetric");

    let out = run(&["check", "--cochain", &fixture("a2_antisym.json"), "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("closed, antisymmetric"));
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"root_system": "B2", "degree": 2, "values": [{"chain": [[1,1],[1,1]], "monomial": "1"}]}"#).unwrap();
    for args in [
        vec!["check", "--cochain", bad.to_str().unwrap()],
        vec!["check", "--cochain", "/nonexistent.json"],
        vec!["enumerate", "--system", "Z9", "--degree", "2"],
        vec!["enumerate", "--system", "A2"],
        vec!["enumerate", "--system", "A2", "--degree", "9"],
        vec!["boundary", "--system", "A2", "--chain", "[[1,0],[1,1]]"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn degree_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_rootcoh"))
        .args(["enumerate", "--system", "A1", "--degree", "5"])
        .env("ROOTCOH_DEGREE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out).as_array().unwrap().len(), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["lie-model", "--cochain", &fixture("ex66.json"), "--check-jacobi", "--counts"],
        vec!["natural", "--cochain", &fixture("ex65.json")],
        vec!["enumerate", "--system", "B3", "--degree", "3"],
    ] {
        let a = run(&args);
        let mut threaded = args.clone();
        threaded.extend(["--threads", "4"]);
        let b = run(&threaded);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, run(&args).stdout);
    }
}

#[test]
fn coboundary_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["d", "--cochain", &fixture("b2_omega1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join("d.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let out = run(&["check", "--cochain", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["closed"], true);
    assert_eq!(v["symmetry"], "symmetric");
}

#[test]
fn cup_conventions() {
    let f = fixture("b2_omega1.json");
    let m = json(&run(&["cup", "--left", &f, "--right", &f]));
    let a = json(&run(&["cup", "--left", &f, "--right", &f, "--convention", "add"]));
    assert_eq!(m["degree"], 2);
    assert_ne!(m, a);
}

#[test]
fn lie_model_report() {
    let out = run(&["lie-model", "--cochain", &fixture("ex66.json"), "--check-jacobi", "--counts"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["jacobi"]["ok"], true);
    assert_eq!(v["killing_counts"]["short"], serde_json::json!(["I", "I*J"]));
    assert_eq!(v["killing_counts"]["long"], serde_json::json!(["J", "I*J"]));
    assert_eq!(v["algebra"]["basis"].as_array().unwrap().len(), 10);
    let bracket = v["algebra"]["brackets"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["left"] == "e[a1]" && b["right"] == "e[-a1]")
        .unwrap();
    assert_eq!(bracket["terms"][0]["monomial"], serde_json::json!({"I": 0, "J": 1}));

    let out = run(&["lie-model", "--cochain", &fixture("not_closed.json"), "--check-jacobi"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["jacobi"]["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn natural_and_symbolic() {
    let out = run(&["natural", "--cochain", &fixture("ex65.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["feasible"], false);
    assert_eq!(v["min_denominator"], 2);

    let out = run(&["integrate", "--cochain", &fixture("ex65.json"), "--require-natural"]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["integrate", "--cochain", &fixture("ex66.json"), "--require-natural"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(&["integrate", "--cochain", &fixture("ex65.json"), "--symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["variables"], serde_json::json!(["I", "xi1", "xi2"]));
}

#[test]
fn explicit_xi() {
    let dir = tempfile::tempdir().unwrap();
    let xi = dir.path().join("xi.json");
    std::fs::write(&xi, r#"{"a2": "I"}"#).unwrap();
    let out = run(&["integrate", "--cochain", &fixture("ex66.json"), "--xi", xi.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["free_variables"]["a2"], serde_json::json!({"I": 1, "J": 0}));
}

#[test]
fn integrate_rejects_antisymmetric() {
    let out = run(&["integrate", "--cochain", &fixture("a2_antisym.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "not_symmetric");
}

#[test]
fn dot_orbit_and_root_facts() {
    let out = run(&["enumerate", "--system", "A2", "--degree", "2", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("digraph"));
    assert_eq!(s.matches(" -> ").count(), 18);

    let out = run(&["orbit", "--system", "B2", "--group", "weyl"]);
    let v = json(&out);
    assert_eq!(v["group_order"], 8);
    assert_eq!(v["root_orbits"].as_array().unwrap().len(), 2);

    let out = run(&["orbit", "--cochain", &fixture("a2_antisym.json"), "--group", "aut"]);
    let v = json(&out);
    assert_eq!((v["group_order"].as_u64(), v["cochain_orbit_size"].as_u64()), (Some(12), Some(2)));

    let out = run(&["lemma61", "--system", "F4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["all_hold"], true);
}
