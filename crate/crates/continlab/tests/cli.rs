//! End-to-end command-line tests: exit codes, output schemas, subject and
//! configuration files.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_BIN_EXE_continlab"));
    assert!(p.exists(), "binary missing at {p:?}");
    p = p.canonicalize().unwrap();
    p
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).to_string(),
        String::from_utf8_lossy(&out.stderr).to_string(),
    )
}

#[test]
fn check_holds_exits_zero() {
    let (code, stdout, _) = run(&[
        "check",
        "--subject",
        "ex3-integer-additive",
        "--property",
        "additive",
        "--grid",
        "41",
        "--lambda",
        "81",
        "--samples",
        "60",
        "--format",
        "text",
    ]);
    assert_eq!(code, 0, "stdout: {stdout}");
    assert!(stdout.contains("additive"));
    assert!(stdout.contains("Holds"));
}

#[test]
fn check_fails_exits_one_with_witness_in_json() {
    let (code, stdout, _) = run(&[
        "check",
        "--subject",
        "ex4-locally-convex-set",
        "--property",
        "locally-convex-upper-sections",
        "--grid",
        "41",
        "--lambda",
        "81",
        "--samples",
        "40",
        "--format",
        "json",
    ]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["schema"], "continlab/1");
    let witness = &v["reports"][0]["witnesses"][0];
    assert!(witness["points"].is_array());
    assert_eq!(witness["robustness"], "SurvivedRefinement");
}

#[test]
fn unknown_subject_is_usage_error() {
    let (code, _, stderr) = run(&["check", "--subject", "nope", "--property", "all"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("unknown"));
}

#[test]
fn unknown_property_is_usage_error() {
    let (code, _, _) = run(&[
        "check",
        "--subject",
        "gp-function",
        "--property",
        "warp-continuity",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn invalid_config_is_usage_error() {
    let (code, _, _) = run(&[
        "check",
        "--subject",
        "gp-function",
        "--property",
        "quasi-concave",
        "--grid",
        "1",
    ]);
    assert_eq!(code, 3);
}

#[test]
fn subject_json_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("subject.json");
    std::fs::write(
        &path,
        r#"{
            "schema": "continlab/1",
            "function": {"expression": "min(x1, x2)", "arity": 2},
            "domain": {"variant": "box", "lower": [0, 0], "upper": [1, 1]}
        }"#,
    )
    .unwrap();
    let (code, stdout, stderr) = run(&[
        "check",
        "--subject",
        path.to_str().unwrap(),
        "--property",
        "concave",
        "--grid",
        "41",
        "--lambda",
        "81",
        "--samples",
        "60",
        "--format",
        "text",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    assert!(stdout.contains("Holds"));
}

#[test]
fn relation_subject_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("relation.json");
    std::fs::write(
        &path,
        r#"{
            "schema": "continlab/1",
            "relation": {
                "variant": "utility",
                "utility": "x1 + x2",
                "domain": {"variant": "box", "lower": [0, 0], "upper": [1, 1]}
            }
        }"#,
    )
    .unwrap();
    let (code, stdout, _) = run(&[
        "check",
        "--subject",
        path.to_str().unwrap(),
        "--property",
        "complete",
        "--grid",
        "41",
        "--lambda",
        "81",
        "--samples",
        "40",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("complete,Holds"));
}

#[test]
fn corpus_subset_json_is_stamped_and_exits_by_contract() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let (code, _, stderr) = run(&[
        "corpus",
        "--subset",
        "ex4-locally-convex-set",
        "--grid",
        "41",
        "--lambda",
        "81",
        "--samples",
        "40",
        "--format",
        "json",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let doc = std::fs::read_to_string(&out_path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&doc).unwrap();
    assert_eq!(v["schema"], "continlab/1");
    assert_eq!(v["summary"]["pass"], true);
    assert_eq!(v["canonical_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn coarse_corpus_run_exits_two_on_unresolved() {
    let (code, stdout, _) = run(&[
        "corpus",
        "--subset",
        "ex2-monotone",
        "--grid",
        "9",
        "--lambda",
        "3",
        "--samples",
        "4",
        "--format",
        "text",
    ]);
    assert_eq!(code, 2, "stdout: {stdout}");
    assert!(stdout.contains("Unresolved"));
}

#[test]
fn config_file_drives_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("config.json");
    std::fs::write(
        &cfg_path,
        r#"{"grid_resolution": 41, "lambda_resolution": 81, "sample_count": 40, "seed": 7}"#,
    )
    .unwrap();
    let (code, stdout, _) = run(&[
        "corpus",
        "--subset",
        "ex4-locally-convex-set",
        "--config",
        cfg_path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["config_echo"]["seed"], 7);
    assert_eq!(v["config_echo"]["grid_resolution"], 41);
}

#[test]
fn edges_export_has_citations() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("edges.json");
    let (code, _, _) = run(&["edges", "--out", out_path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let doc = std::fs::read_to_string(&out_path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&doc).unwrap();
    assert_eq!(v["schema"], "continlab/1");
    let edges = v["edges"].as_array().unwrap();
    assert!(edges.len() >= 30);
    for e in edges {
        assert!(e["citation"]["quote"].as_str().map(|q| !q.is_empty()).unwrap_or(false));
    }
}

#[test]
fn deduce_reports_fired_edges_and_derived_facts() {
    let (code, stdout, stderr) = run(&[
        "deduce",
        "--subject",
        "ex3-integer-additive",
        "--grid",
        "41",
        "--lambda",
        "81",
        "--samples",
        "60",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["schema"], "continlab/1");
    assert!(v["fired_edges"].as_array().unwrap().iter().any(|e| {
        e.as_str().map(|s| s.starts_with("thm5")).unwrap_or(false)
    }));
    // The additive cone edges derive mixture facts from the upper side.
    let derived = &v["entry"]["derived"]["facts"];
    assert!(derived.get("mixture-continuous").is_some());
}

#[test]
fn deduce_accepts_relation_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("relation.json");
    std::fs::write(
        &path,
        r#"{
            "schema": "continlab/1",
            "relation": {
                "variant": "utility",
                "utility": "min(x1, x2)",
                "domain": {"variant": "box", "lower": [0, 0], "upper": [1, 1]}
            }
        }"#,
    )
    .unwrap();
    let (code, stdout, stderr) = run(&[
        "deduce",
        "--subject",
        path.to_str().unwrap(),
        "--grid",
        "41",
        "--lambda",
        "81",
        "--samples",
        "60",
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    // A continuous quasi-concave utility on a box satisfies every premise of
    // the seven-way equivalence, so the clique fires.
    assert!(v["fired_edges"]
        .as_array()
        .unwrap()
        .iter()
        .any(|e| e.as_str().map(|s| s.starts_with("thm3a")).unwrap_or(false)));
    assert!(v["entry"]["contradictions"].as_array().unwrap().is_empty());
}

#[test]
fn deduce_with_fabricated_assertions_reports_contradictions() {
    // Asserting convexity and property C on the benchmark-ratio relation is
    // a deliberate misuse: the audit must flag the derived continuity.
    let (code, stdout, _) = run(&[
        "deduce",
        "--subject",
        "gp-relation",
        "--assert",
        "property-c,convex-upper-sections",
        "--grid",
        "81",
        "--lambda",
        "161",
        "--samples",
        "120",
    ]);
    assert_eq!(code, 1, "stdout: {stdout}");
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let contradictions = v["entry"]["contradictions"].as_array().unwrap();
    assert!(!contradictions.is_empty());
    assert!(contradictions
        .iter()
        .any(|c| c["fact"].as_str() == Some("continuous")));
}
