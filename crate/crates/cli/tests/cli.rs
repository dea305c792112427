use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mink(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mink")).current_dir(dir).args(args).output().expect("run mink")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn k5_graph(dir: &Path) {
    let names = ["a", "b", "c", "d", "e"];
    let mut edges = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            edges.push([names[i], names[j]]);
        }
    }
    let g = serde_json::json!({ "vertices": names, "edges": edges });
    fs::write(dir.join("k5.json"), g.to_string()).unwrap();
}

#[test]
fn enumerate_and_filter_k6() {
    let dir = tempfile::tempdir().unwrap();
    let out = mink(dir.path(), &["--json", "enumerate", "--n", "6", "--out", "k6"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["count"], 102);
    let manifest: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("k6/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["count"], 102);
    let out = mink(dir.path(), &["--json", "filter", "--in", "k6", "--k", "1", "--out", "m1"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["kept"]["count"], 1);
    assert_eq!(json_of(&out)["kept"]["crossings"][0], 3);
}

#[test]
fn enumerate_budget_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let out = mink(dir.path(), &["enumerate", "--n", "6", "--max-candidates", "10", "--out", "k6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("stopped after"));
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn decide_check_and_render() {
    let dir = tempfile::tempdir().unwrap();
    k5_graph(dir.path());
    let out = mink(dir.path(), &["--json", "decide", "--graph", "k5.json", "--k", "1", "--out", "w.json"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["crossings"], 1);
    let out = mink(dir.path(), &["--json", "decide", "--graph", "k5.json", "--k", "0"]);
    assert_eq!(json_of(&out)["answer"], "no");
    let out = mink(dir.path(), &["--json", "check-drawing", "--drawing", "w.json"]);
    let v = json_of(&out);
    assert_eq!((v["valid"].clone(), v["min_k_planar"].clone()), (Value::Bool(true), Value::Bool(true)));
    let out = mink(dir.path(), &["render", "--drawing", "w.json", "--out", "w.svg"]);
    assert!(out.status.success());
    let svg1 = fs::read(dir.path().join("w.svg")).unwrap();
    assert!(String::from_utf8_lossy(&svg1).starts_with("<svg"));
    mink(dir.path(), &["render", "--drawing", "w.json", "--out", "w.svg"]);
    assert_eq!(fs::read(dir.path().join("w.svg")).unwrap(), svg1);
    let out = mink(dir.path(), &["render", "--drawing", "w.json", "--out", "bad.svg", "--outer-face", "999"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("bad.svg").exists());
}

#[test]
fn reduce_draw_extract_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let out = mink(p, &["--json", "reduce", "--values", "1,1,3", "--out", "art.json"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["vertices"], 774);
    let out = mink(p, &["--json", "yes-drawing", "--artifact", "art.json", "--out", "yes.json"]);
    assert_eq!(json_of(&out)["min_1_planar"], true);
    let out = mink(p, &["--json", "extract", "--artifact", "art.json", "--drawing", "yes.json", "--out", "p.json"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["sums"], serde_json::json!([5]));
    let out = mink(p, &["extract", "--artifact", "art.json", "--drawing", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve3p_random_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let a = mink(dir.path(), &["--json", "--seed", "5", "solve3p", "--random", "3"]);
    let b = mink(dir.path(), &["--json", "--seed", "5", "solve3p", "--random", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["answer"], "yes");
    assert_eq!(json_of(&a)["in_range"], true);
    let no = mink(dir.path(), &["--json", "solve3p", "--values", "1,1,1,1,1,7"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(json_of(&no)["answer"], "no");
}

#[test]
fn gadget_adds_the_expected_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = mink(dir.path(), &["--json", "gadget", "--out", "g.json", "--template-out", "t.json"]);
    let v = json_of(&out);
    assert_eq!((v["added_vertices"].as_u64(), v["added_edges"].as_u64()), (Some(94), Some(206)));
    let out = mink(dir.path(), &["--json", "check-drawing", "--drawing", "t.json"]);
    assert_eq!(json_of(&out)["min_k_planar"], true);
}

#[test]
fn paper_checks_zero_budget_is_all_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let out = mink(dir.path(), &["--json", "paper-checks", "--zero-budget", "--out", "r.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["summary"]["pass"], 0);
    assert_eq!(v["summary"]["fail"], 0);
    assert!(dir.path().join("r.json").exists());
}

#[test]
fn threads_flag_is_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let out = mink(dir.path(), &["--threads", "2", "--json", "enumerate", "--n", "5"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["count"], 5);
}
