use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_srgsep"));
    cmd.args(args).env_remove("SRGSEP_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("SRGSEP_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn problem_line(dimacs: &str) -> String {
    dimacs.lines().find(|l| l.starts_with("p ")).unwrap().to_string()
}

#[test]
fn gen_examples() {
    for (args, line) in [
        (&["gen", "--family", "paley", "--q", "13"][..], "p edge 13 39"),
        (&["gen", "--family", "triangular", "--n", "5"][..], "p edge 10 30"),
        (&["gen", "--family", "bvls"][..], "p edge 243 2673"),
    ] {
        let o = run(args, None);
        assert!(o.status.success());
        assert_eq!(problem_line(&stdout(&o)), line);
    }
}

#[test]
fn gen_writes_sidecar_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("hs.dimacs");
    let o = run(&["gen", "--family", "hoffman_singleton", "--out", out.to_str().unwrap()], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let meta: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("hs.dimacs.meta.json")).unwrap()).unwrap();
    assert_eq!(meta["params"]["nu"], 50);
    assert_eq!(meta["schema"], "srg-separator/1");
    let g = srgsep::graph::DenseGraph::from_dimacs(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(meta["checksum"].as_u64().unwrap(), g.checksum());

    let o = run(&["--json", "bounds", "--file", out.to_str().unwrap()], None);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["bounds"]["hoffman"], "15");

    let o = run(&["--json", "solve", "--file", out.to_str().unwrap(), "--mode", "coclique"], None);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["solve"]["value"], 15);
}

#[test]
fn json_gen_format() {
    let o = run(&["gen", "--family", "paley", "--q", "5", "--format", "json"], None);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nu"], 5);
    assert_eq!(v["edges"].as_array().unwrap().len(), 5);
}

#[test]
fn bounds_example() {
    let o = run(&["bounds", "--nu", "36", "--k", "14", "--lambda", "4", "--mu", "6"], None);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("delsarte  9/2") && text.contains("hoffman   8"), "{text}");
}

#[test]
fn classify_vls_example() {
    let o = run(&["--json", "classify", "--family", "vls", "--p", "2", "--e", "3", "--t", "3"], None);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"]["status"], "NonSeparating");
    let w = &v["verdict"]["witnesses"];
    assert_eq!(w["clique"].as_array().unwrap().len() * w["coclique"].as_array().unwrap().len(), 64);
}

#[test]
fn classify_is_served_from_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--json", "classify", "--family", "bvls"];
    let first = run(&args, Some(dir.path()));
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = run(&args, Some(dir.path()));
    assert_eq!(stdout(&first), stdout(&second));
    let rec: Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(rec["verdict"]["status"], "Separating");
}

#[test]
fn corrupt_cache_entries_are_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--json", "classify", "--family", "paley", "--q", "13"];
    run(&args, Some(dir.path()));
    let entry = std::fs::read_dir(dir.path()).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "{ not json").unwrap();
    let o = run(&args, Some(dir.path()));
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("corrupt cache entry"));
}

#[test]
fn exit_codes() {
    let o = run(&["classify", "--family", "paley", "--q", "7"], None);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["classify", "--family", "polar", "--polar", "Q+", "--dim", "7", "--q", "25"], None);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
    let o = run(&["--max-nodes", "1", "solve", "--family", "polar", "--polar", "W", "--dim", "3", "--q", "3", "--mode", "coclique"], None);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn table_two() {
    let o = run(&["table", "--which", "2"], None);
    assert!(o.status.success());
    assert!(stdout(&o).contains("53 rows, 0 mismatches"));
}

#[test]
fn record_json_round_trips() {
    let o = run(&["--json", "classify", "--family", "triangular", "--n", "7"], None);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tool_version"], env!("CARGO_PKG_VERSION"));
    let verdict: srgsep::classify::Verdict = serde_json::from_value(v["verdict"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&verdict).unwrap(), v["verdict"]);
    let bounds: srgsep::bounds::BoundReport = serde_json::from_value(v["bounds"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&bounds).unwrap(), v["bounds"]);
}
