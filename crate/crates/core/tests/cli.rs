use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn contmach(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_contmach")).args(args).output().expect("contmach runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("one JSON document")
}

#[test]
fn check_passes_on_a_nonzero_corpus() {
    let corpus = fixture("corpus.json");
    for machine in ["invert", "invert|invert", "sign"] {
        let (status, out) = contmach(&["check", "--machine", machine, "--corpus", &corpus]);
        assert_eq!(status, 0, "{machine}: {out}");
        let doc = json(&out);
        assert_eq!(doc["samples"], 6);
        assert_eq!(doc["failures"], Value::Array(vec![]));
        assert_eq!(doc["undecided"], Value::Array(vec![]));
    }
}

#[test]
fn zero_in_the_corpus_is_undecided() {
    let (status, out) = contmach(&["check", "--machine", "invert", "--corpus", &fixture("corpus_with_zero.json"), "--max-effort", "16"]);
    assert_eq!(status, 2);
    let doc = json(&out);
    assert!(doc["failures"].as_array().unwrap().is_empty());
    let undecided = doc["undecided"].as_array().unwrap();
    assert!(!undecided.is_empty());
    assert!(undecided.iter().all(|u| u["sample"] == 1 && u["point"] == "0/1"));
}

#[test]
fn output_flag_writes_the_document_to_a_file() {
    let path: PathBuf = std::env::temp_dir().join(format!("contmach-cli-{}.json", std::process::id()));
    let target = path.to_str().unwrap();
    let (status, out) = contmach(&["invert", "--value", "4", "--eps", "1/100", "--output", target]);
    assert_eq!(status, 0);
    assert!(out.is_empty());
    let doc = json(&std::fs::read_to_string(&path).unwrap());
    std::fs::remove_file(&path).unwrap();
    assert_eq!(doc["answer"], "1/4");
}

#[test]
fn text_format_and_compose() {
    let (status, out) = contmach(&["compose", "--pipeline", "invert|invert", "--value", "3", "--eps", "1/10", "--format", "text"]);
    assert_eq!(status, 0);
    assert!(out.contains('3'), "{out}");
    assert!(serde_json::from_str::<Value>(&out).is_err());
}

#[test]
fn associate_trace_answers_after_its_queries() {
    let (status, out) = contmach(&["associate-trace", "--machine", "invert", "--value", "2", "--question", "1"]);
    assert_eq!(status, 0);
    let doc = json(&out);
    assert_eq!(doc["transcript"]["answered"], true);
    let rounds = doc["transcript"]["rounds"].as_array().expect("rounds listed");
    assert_eq!(rounds.last().unwrap()["tag"], "answer");
    assert!(rounds[..rounds.len() - 1].iter().all(|r| r["tag"] == "query"));
}

#[test]
fn usage_errors() {
    for args in [
        &["invert", "--value", "1", "--eps", "0"][..],
        &["invert", "--value", "abc", "--eps", "1"],
        &["compose", "--pipeline", "invert|square", "--value", "1", "--eps", "1"],
        &["check", "--machine", "invert", "--corpus", "/nonexistent/corpus.json"],
        &["frobnicate"],
    ] {
        assert_eq!(contmach(args).0, 1, "{args:?}");
    }
}
