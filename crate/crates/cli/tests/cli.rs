use std::fs;
use std::process::{Command, Output};

use raagpath::io::{self, ParseError};
use raagpath_core::morphism::cycle_to_path_map;
use raagpath_core::Graph;
use serde_json::Value;

fn raagpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_raagpath"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

#[test]
fn graph_files_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    for g in [
        Graph::cycle(6).unwrap(),
        Graph::complete_bipartite(2, 3).unwrap(),
        Graph::lowerbound(9).unwrap(),
    ] {
        for ext in ["adj", "json"] {
            let p = dir.path().join(format!("g.{ext}"));
            io::save_graph_file(&p, &g).unwrap();
            assert_eq!(io::load_graph_file(&p).unwrap(), g);
        }
    }
}

#[test]
fn malformed_edge_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.adj");
    fs::write(&p, "a: b\nb: a\nc: a  d\n").unwrap();
    let e = io::load_graph_file(&p).unwrap_err();
    let pe = e.downcast_ref::<ParseError>().expect("a parse error");
    assert_eq!((pe.line, pe.column), (3, 7));

    let o = raagpath(&["graph", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.adj:3:7"));
}

#[test]
fn map_file_with_graph_reference() {
    let dir = tempfile::tempdir().unwrap();
    io::save_graph_file(&dir.path().join("c5.adj"), &Graph::cycle(5).unwrap()).unwrap();
    let f = cycle_to_path_map(8, 5).unwrap();
    let mut v: Value = serde_json::from_str(&io::map_to_json(&f, None)).unwrap();
    v["codomain"] = Value::String("c5.adj".into());
    let p = dir.path().join("phi.json");
    fs::write(&p, v.to_string()).unwrap();
    let back = io::load_map(p.to_str().unwrap()).unwrap();
    assert_eq!(back.map, f);

    let o = raagpath(&["certify", p.to_str().unwrap(), "--expect", "injective"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["evidence"]["kind"], "peeling");
}

#[test]
fn certify_exit_codes() {
    let o = raagpath(&["certify", "phi:7,5", "--expect", "noninjective"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["verdict"], "certified_non_injective");
    assert_eq!(v["evidence"]["kind"], "lift_failure");

    let o = raagpath(&["certify", "phi:7,5", "--expect", "injective"]);
    assert_eq!(o.status.code(), Some(1));

    let o = raagpath(&["certify", "phi:7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn certify_with_base_set_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.json");
    fs::write(&p, r#"[{"base": "v0", "steps": []}]"#).unwrap();
    let o = raagpath(&[
        "certify",
        "phi:3,3",
        "--mode",
        "noninjective",
        "--base-set",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["verdict"], "certified_non_injective");

    fs::write(&p, r#"[{"base": "v0", "steps": ["v0"]}]"#).unwrap();
    let o = raagpath(&["certify", "phi:3,3", "--base-set", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn grid_output_is_independent_of_threads() {
    let run = |t: &str| {
        Command::new(env!("CARGO_BIN_EXE_raagpath"))
            .args(["cycles", "--m", "3..=6"])
            .env("RAAGPATH_THREADS", t)
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("4"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["pass"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 6 + 8 + 10 + 12);
}

#[test]
fn word_and_hom() {
    let o = raagpath(&["word", "C4", "v0 v2 v0^-1 v2^-1", "--equal", ""]);
    let v = json_of(&o);
    assert_eq!(v["trivial"], true);
    assert_eq!(v["equal"], true);

    let o = raagpath(&["hom", "phi:3,3", "v0 v2 v0^-1 v2^-1"]);
    assert_eq!(json_of(&o)["image_reduced"], "");

    let o = raagpath(&["kernel", "phi:3,3", "--bound", "4"]);
    assert_eq!(json_of(&o)["kernel_word"], "v0 v2 v0^-1 v2^-1");

    let o = raagpath(&["word", "C4", "v0 zz"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn paths_and_synth() {
    let o = raagpath(&["paths", "K2,3", "--from", "v0", "--count-only"]);
    let v = json_of(&o);
    assert!(v.get("rows").is_none());
    assert!(v["count"].as_u64().unwrap() > 1);

    let o = raagpath(&["synth", "C5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["verified"], true);

    let o = raagpath(&["synth", "C5", "--dot"]);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("graph \"T\" {"));
}

#[test]
fn distortion_sampling_is_seeded() {
    let a = raagpath(&[
        "--seed",
        "7",
        "kernel",
        "phi:8,5",
        "--bound",
        "4",
        "--distortion",
        "50",
    ]);
    let b = raagpath(&[
        "--seed",
        "7",
        "kernel",
        "phi:8,5",
        "--bound",
        "4",
        "--distortion",
        "50",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert!(v["kernel_word"].is_null());
    assert!(v["distortion"]["min"].as_f64().unwrap() >= 1.0);
}
