use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use p2c::json::{self, Solution};
use p2c::trace::TraceDoc;
use p2c_core::iso::example1_isomorphisms;
use serde_json::Value;

fn p2c(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p2c"))
        .current_dir(dir)
        .env_remove("P2C_GUARD")
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> Value {
    let text = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str::<Value>(text.trim()).expect("stderr is error JSON")["error"].clone()
}

const K4: &str = r#"{"n":4,"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#;

#[test]
fn fixture_then_adversarial_run_gives_an_example_map() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(p2c(d, &["fixture", "--output", "fx.g6"]).status.success());
    assert_eq!(fs::read_to_string(d.join("fx.g6")).unwrap().lines().count(), 2);

    let o = p2c(d, &["iso-complete", "--input", "fx.g6", "--oracle", "adversarial", "--seed", "7", "--trace", "t.json", "--dot", "dots"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let Solution::Isomorphism(phi) = json::solution_from_json(&stdout(&o)).unwrap() else { panic!("expected a map") };
    assert!(example1_isomorphisms().contains(&phi));

    let TraceDoc::Iso(t) = TraceDoc::from_json(&fs::read_to_string(d.join("t.json")).unwrap()).unwrap() else {
        panic!("expected an iso trace")
    };
    assert_eq!(t.loops.len(), 5);
    assert_eq!(fs::read_dir(d.join("dots")).unwrap().count(), 5);

    let r = p2c(d, &["replay", "--trace", "t.json"]);
    assert!(r.status.success());
    assert_eq!(serde_json::from_str::<Value>(&stdout(&r)).unwrap()["identical"], true);
}

#[test]
fn two_input_files_work_too() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("g.json"), r#"{"n":3,"edges":[[1,2],[2,3]]}"#).unwrap();
    fs::write(d.join("h.g6"), "Bg\n").unwrap();
    let o = p2c(d, &["iso-complete", "--input", "g.json", "--input2", "h.g6", "--output", "phi.json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = p2c(d, &["verify", "--input", "g.json", "--input2", "h.g6", "--solution", "phi.json"]);
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(stdout(&v).trim(), r#"{"problem":"iso","valid":true}"#);
}

#[test]
fn honest_k4_cycle_verifies_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("k4.json"), K4).unwrap();
    let o = p2c(d, &["hc-complete", "--input", "k4.json", "--trace", "h.json", "--output", "c.json"]);
    assert!(o.status.success());
    let TraceDoc::Hc(t) = TraceDoc::from_json(&fs::read_to_string(d.join("h.json")).unwrap()).unwrap() else {
        panic!("expected an hc trace")
    };
    assert_eq!(t.oracle_calls, 3);
    assert_eq!(p2c(d, &["verify", "--input", "k4.json", "--solution", "c.json"]).status.code(), Some(0));
    assert_eq!(p2c(d, &["replay", "--trace", "h.json"]).status.code(), Some(0));
}

#[test]
fn same_seed_gives_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("k4.json"), K4).unwrap();
    for name in ["a.json", "b.json"] {
        let o = p2c(d, &["hc-complete", "--input", "k4.json", "--oracle", "random", "--seed", "11", "--trace", name]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(d.join("a.json")).unwrap(), fs::read(d.join("b.json")).unwrap());
}

#[test]
fn planted_cycle_from_a_vertex_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("k4.json"), K4).unwrap();
    fs::write(d.join("p.json"), "[1,3,2,4]").unwrap();
    let o = p2c(d, &["hc-complete", "--input", "k4.json", "--oracle", "planted", "--planted", "p.json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let Solution::Cycle(c) = json::solution_from_json(&stdout(&o)).unwrap() else { panic!("expected a cycle") };
    assert_eq!(c.cycle.len(), 4);
}

#[test]
fn error_classes_have_distinct_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("k4.json"), K4).unwrap();
    fs::write(d.join("bad.json"), "{not json").unwrap();

    let o = p2c(d, &["hc-complete", "--input", "bad.json", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["kind"], "parse");

    let o = p2c(d, &["hc-complete", "--input", "k4.json", "--guard", "3"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_json(&o)["kind"], "instance-too-large");

    let o = p2c(d, &["hc-complete", "--input", "k4.json", "--oracle", "context-free"]);
    assert_eq!(o.status.code(), Some(2));

    let o = p2c(d, &["iso-complete", "--input", "k4.json", "--oracle", "context-free"]);
    assert_eq!(o.status.code(), Some(2));

    let o = p2c(d, &["replay", "--trace", "missing.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn guard_flag_beats_environment() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("k4.json"), K4).unwrap();
    let run = |args: &[&str], env: &str| {
        Command::new(env!("CARGO_BIN_EXE_p2c")).current_dir(d).env("P2C_GUARD", env).args(args).output().unwrap()
    };
    assert_eq!(run(&["hc-complete", "--input", "k4.json"], "3").status.code(), Some(4));
    assert_eq!(run(&["hc-complete", "--input", "k4.json", "--guard", "9"], "3").status.code(), Some(0));
}

#[test]
fn invalid_solution_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("k4.json"), K4).unwrap();
    fs::write(d.join("c.json"), r#"{"cycle":[1,3,2,4],"edges":[0,1,2,3]}"#).unwrap();
    let o = p2c(d, &["verify", "--input", "k4.json", "--solution", "c.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), r#"{"problem":"hc","valid":false}"#);
}

#[test]
fn doctored_trace_replays_as_violation() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("k4.json"), K4).unwrap();
    assert!(p2c(d, &["hc-complete", "--input", "k4.json", "--trace", "h.json"]).status.success());
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(d.join("h.json")).unwrap()).unwrap();
    // The first answer was contracted, so answering it again names a dead edge.
    let first = doc["steps"][0]["answer"].clone();
    doc["steps"][1]["answer"] = first;
    fs::write(d.join("bad.json"), serde_json::to_string_pretty(&doc).unwrap()).unwrap();
    let o = p2c(d, &["replay", "--trace", "bad.json"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_json(&o)["kind"], "oracle-violation");
}

#[test]
fn probe_reports_every_seed() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("k4.json"), K4).unwrap();
    let o = p2c(d, &["probe-context-free", "--input", "k4.json", "--seeds", "6"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["runs"], 6);
    assert_eq!(v["outcomes"].as_array().unwrap().len(), 6);
}
