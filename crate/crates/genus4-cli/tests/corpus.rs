use genus4_cli::corpus::{entry_from_json, load_corpus, verify_corpus, verify_entry};
use serde_json::json;
use std::path::PathBuf;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn shipped_corpus_passes() {
    let entries = load_corpus(&corpus_dir()).unwrap();
    assert!(entries.len() >= 50);
    let rep = verify_corpus(&entries);
    let failed: Vec<_> = rep.fixtures.iter().filter(|f| !f.passed).collect();
    assert!(failed.is_empty(), "{failed:#?}");
    let ids: Vec<&str> = rep.fixtures.iter().map(|f| f.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(rep.fixtures.iter().all(|f| !f.anchors.is_empty()));
}

#[test]
fn wrong_expectation_fails() {
    let e = entry_from_json(json!({
        "id": "x", "kind": "weierstrass", "genus": 4, "form": "x^5*y^5",
        "expected": {"anchors": ["curve.two_a4"], "labels": ["A4", "A5"]}
    }))
    .unwrap();
    let r = verify_entry(&e);
    assert!(!r.passed);
    assert_eq!(r.checks[0].actual, r#"["A4", "A4"]"#);
}

#[test]
fn anchors_are_required_and_must_resolve() {
    let bad = |anchors: serde_json::Value| {
        entry_from_json(json!({
            "id": "x", "kind": "slope", "alpha": "1/2", "expected": {"anchors": anchors, "t": "2/5"}
        }))
    };
    assert!(bad(json!([])).is_err());
    assert!(bad(json!(["no.such.anchor"])).is_err());
    assert!(bad(json!(["picard.slope"])).is_ok());
}

#[test]
fn unexpected_errors_fail_and_expected_errors_pass() {
    let e = entry_from_json(json!({
        "id": "x", "kind": "named", "name": "C_AB", "params": ["0", "0"],
        "expected": {"anchors": ["curve.cab"], "labels": []}
    }))
    .unwrap();
    assert!(!verify_entry(&e).passed);
    let e = entry_from_json(json!({
        "id": "x", "kind": "named", "name": "C_AB", "params": ["0", "0"],
        "expected": {"anchors": ["curve.cab"], "error": "domain"}
    }))
    .unwrap();
    assert!(verify_entry(&e).passed);
}

#[test]
fn duplicate_ids_and_bad_files_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let entry = r#"{"id": "a", "kind": "slope", "alpha": "1/2", "expected": {"anchors": ["picard.slope"], "t": "2/5"}}"#;
    std::fs::write(dir.path().join("one.json"), format!("[{entry}, {entry}]")).unwrap();
    assert!(load_corpus(dir.path()).is_err());
    std::fs::write(dir.path().join("one.json"), format!("[{entry}]")).unwrap();
    assert_eq!(load_corpus(dir.path()).unwrap().len(), 1);
    std::fs::write(dir.path().join("two.json"), "[{").unwrap();
    assert!(load_corpus(dir.path()).is_err());
}

#[test]
fn corpus_command_exit_status() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_genus4"))
        .args(["corpus", "--corpus", corpus_dir().to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("f.json"),
        r#"[{"id": "a", "kind": "slope", "alpha": "1/2", "expected": {"anchors": ["picard.slope"], "t": "1/3"}}]"#,
    )
    .unwrap();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_genus4"))
        .args(["corpus", "--corpus", dir.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}
