use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

struct Work {
    dir: TempDir,
}

impl Work {
    fn new() -> Self {
        Work {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, v: &Value) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, v.to_string()).unwrap();
        path
    }
}

fn rowcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rowcomp")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

/// `[[0, s, 1], [s²+1, 0, 0]]`.
fn example() -> Value {
    json!({"rows": 2, "cols": 3, "entries": [[[], [0, 1], [1]], [[1, 0, 1], [], []]]})
}

fn prescription(q: &[i64]) -> Value {
    json!({"z": 1, "x": 0, "kind": "poly", "infinite": q, "cmi": [1], "rmi": [5]})
}

#[test]
fn structure_prints_sorted_keys() {
    let w = Work::new();
    let m = w.file("p.json", &example());
    let out = rowcomp(&["structure", path(&m)]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["cmi"], json!([1]));
    assert_eq!(v["inf_orders"], json!([-2, -1]));
    assert_eq!(v["field"], "q");
    // Keys print in sorted order and the output is byte-stable.
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let keys = ["\"cmi\"", "\"field\"", "\"inf_orders\"", "\"irf\"", "\"rank\"", "\"rmi\""];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{text}");
    assert_eq!(rowcomp(&["structure", path(&m)]).stdout, out.stdout);
}

#[test]
fn field_flag_and_document_must_agree() {
    let w = Work::new();
    let mut doc = example();
    doc["field"] = json!("fp:2");
    let m = w.file("p.json", &doc);
    let out = rowcomp(&["structure", path(&m)]);
    assert_eq!(stdout_json(&out)["field"], "fp:2");
    // s² + 1 = (s + 1)² over F2.
    assert_eq!(stdout_json(&out)["irf"], json!([["1"], ["1", "0", "1"]]));
    let out = rowcomp(&["structure", "--field", "q", path(&m)]);
    assert_eq!(out.status.code(), Some(1));
    let out = rowcomp(&["structure", "--field", "fp:4", path(&m)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn scan_reproduces_the_region() {
    let w = Work::new();
    let m = w.file("p.json", &example());
    let p = w.file("pre.json", &prescription(&[0, 0]));
    let out = rowcomp(&["scan", path(&m), path(&p), "--case", "inf-sing-poly", "--range", "-10..0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let mut region: Vec<(i64, i64)> = v["region"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t[0].as_i64().unwrap(), t[1].as_i64().unwrap()))
        .collect();
    region.sort();
    let mut want = Vec::new();
    for q1 in -10..=0 {
        for q2 in q1..=0 {
            if q1 <= -2 && -2 <= q2 && q2 <= -1 && (-8..=-6).contains(&(q1 + q2)) {
                want.push((q1, q2));
            }
        }
    }
    assert_eq!(region, want);
}

#[test]
fn decide_exit_codes() {
    let w = Work::new();
    let m = w.file("p.json", &example());
    let cmi = w.file("cmi.json", &json!({"z": 1, "x": 0, "kind": "rat", "cmi": [1]}));
    let out = rowcomp(&["decide", "--case", "cmi", path(&m), path(&cmi)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["feasible"], "yes");
    let bad = w.file("bad.json", &prescription(&[0, 0]));
    let out = rowcomp(&["decide", path(&m), path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["feasible"], "no");
}

#[test]
fn verify_the_scaled_example() {
    let w = Work::new();
    let sp = w.file(
        "sp.json",
        &json!({"rows": 2, "cols": 3, "entries": [[[], [0, 0, 1], [0, 1]], [[0, 1, 0, 1], [], []]]}),
    );
    let wm = w.file("w.json", &json!({"rows": 1, "cols": 3, "entries": [[[1, 0, 1, 0, 0, 1, 0, 1], [], []]]}));
    let pre = json!({"z": 1, "x": 0, "kind": "poly", "finite": {"num": [[1], [0, 1, 0, 1]]},
                     "infinite": [-7, -2], "cmi": [1], "rmi": [5]});
    let p = w.file("pre.json", &pre);
    let out = rowcomp(&["verify", path(&sp), path(&wm), path(&p)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(stdout_json(&out)["ok"], true);
    let off = w.file("off.json", &prescription(&[-6, -1]));
    let out = rowcomp(&["verify", path(&sp), path(&wm), path(&off)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["mismatches"], json!(["infinite"]));
}

#[test]
fn search_finds_and_reports() {
    let w = Work::new();
    let m = w.file("p.json", &example());
    let p = w.file("pre.json", &prescription(&[-6, -2]));
    let out = rowcomp(&["search", path(&m), path(&p)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["status"], "found");
    let p = w.file("no.json", &prescription(&[0, 0]));
    let out = rowcomp(&["search", path(&m), path(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["status"], "infeasible");
}

#[test]
fn oracle_on_a_given_matrix() {
    let w = Work::new();
    let space = json!({"field": "fp:2", "m": 1, "n": 2, "z": 1, "max_deg": 1,
                       "p": {"rows": 1, "cols": 2, "entries": [[[0, 1], [1]]]}});
    let s = w.file("space.json", &space);
    let out_file = w.dir.path().join("report.jsonl");
    let out = rowcomp(&["oracle", "--space", path(&s), "--json", out_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(out_file).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let last = lines.last().unwrap();
    assert_eq!(last["matrices"], 1);
    assert_eq!(last["totals"]["counterexample"], 0);
    assert_eq!(lines[0]["enumerated"], 16);
}

#[test]
fn malformed_input_names_the_path() {
    let w = Work::new();
    let m = w.file("p.json", &json!({"rows": 1, "cols": 2, "entries": [[[1], "x"]]}));
    let out = rowcomp(&["structure", path(&m)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("$.entries[0][1]"), "{err}");
    let out = rowcomp(&["structure", "/nonexistent/p.json"]);
    assert_eq!(out.status.code(), Some(1));
    let out = rowcomp(&["scan", path(&m), path(&m), "--range", "3..1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(rowcomp(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(rowcomp(&["--help"]).status.code(), Some(0));
}
