//! End-to-end runs of the `mopdom` binary.

use std::path::Path;
use std::process::{Command, Output};

const H1: &str = "{\"n\":12,\"chords\":[[1,11],[2,5],[2,6],[2,10],[2,11],[3,5],[6,10],[7,9],[7,10]]}\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mopdom")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn gen_strip() {
    let out = run(&["gen", "--family", "strip", "--m", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "{\"n\":9,\"chords\":[[1,7],[1,8],[2,6],[2,7],[3,5],[3,6]]}\n");
}

#[test]
fn gen_requires_parameters() {
    let out = run(&["gen", "--family", "fig5", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--s"));
}

#[test]
fn solve_exceptional_graph() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h1.json", H1);
    let out = run(&["solve", "--k", "2", &f]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "k,n,gamma,set\n2,12,5,0 1 5 6 7\n");
}

#[test]
fn construct_random_graph_with_trace() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.json");
    let f = f.to_str().unwrap();
    assert!(run(&["gen", "--family", "random", "--n", "40", "--seed", "11", "--out", f]).status.success());
    let out = run(&["construct", "--k", "2", f, "--format", "json"]);
    assert!(out.status.success());
    let rec: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(rec["size"].as_u64().unwrap() <= 16);
    assert_eq!(rec["valid"], true);
    assert!(!rec["trace"].as_str().unwrap().is_empty());
}

#[test]
fn classify_reports_the_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h1.json", H1);
    let out = run(&["classify", &f, "--k", "2"]);
    assert_eq!(stdout(&out), "{\"k\":2,\"in_hk\":true,\"p\":1,\"cycle\":[2,6,10],\"piece_sizes\":[4,4,4]}\n");
}

#[test]
fn bad_file_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", "{\"n\":5,\"chords\":[[0,2],[0,3]]}\n{\"n\":5,\"chords\":[[0,2]]}\n");
    let out = run(&["solve", "--k", "1", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn verify_is_deterministic_and_passes() {
    let a = run(&["verify", "--k", "2", "--n", "10"]);
    let b = run(&["verify", "--k", "2", "--n", "10"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_writes_extremal_files() {
    let dir = tempfile::tempdir().unwrap();
    let ext = dir.path().join("ext");
    let out = run(&["table", "--k", "2", "--n", "12", "--n-min", "12", "--extremal-dir", ext.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "k,n,gamma,extremal_count,extremal_files\n2,12,5,2,k2_n12_0.json;k2_n12_1.json\n");
    assert!(ext.join("k2_n12_1.json").exists());
}

#[test]
fn gamma_formula_exit_code_tracks_agreement() {
    assert!(run(&["gamma-formula", "--k", "2", "--n", "12,14"]).status.success());
    // No exceptional graph has order 20 at k = 3, so the ceiling is not witnessed.
    let out = run(&["gamma-formula", "--k", "3", "--n", "20", "--samples", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("3,20,9,"));
}

#[test]
fn guard_override_is_capped() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "h1.json", H1);
    let out = run(&["solve", "--k", "2", &f, "--guard-override", "65"]);
    assert_eq!(out.status.code(), Some(2));
}
