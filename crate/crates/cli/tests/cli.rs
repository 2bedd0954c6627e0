// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn exactq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exactq"))
        .args(args)
        .env_remove("EXACTQ_MAX_N")
        .env_remove("EXACTQ_SAMPLES")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_parity_profile() {
    let out = exactq(&["--format", "json", "analyze", "--fn", "profile:0,1,0,1"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], "exactq.analyze/1");
    assert_eq!(v["symmetric_class"], "PARITY_3");
    assert_eq!(v["degree"], 3);
    assert_eq!(v["decision_tree_depth"], 3);
}

#[test]
fn analyze_and2_and_read_once() {
    let v = json(&exactq(&["analyze", "--fn", "bin:0001", "--format", "json"]));
    assert_eq!(v["and_isomorphic"], true);
    assert_eq!(v["symmetric_class"], "AND_2");
    let v = json(&exactq(&["analyze", "--fn", "formula:(x1|x2)&~x3", "--format", "json"]));
    assert!(v["read_once"].is_string(), "{v}");
    assert_eq!(v["and_isomorphic"], false);
}

#[test]
fn parse_errors_are_usage_errors() {
    let out = exactq(&["analyze", "--fn", "bin:01x1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`x`"));
    assert_eq!(code(&exactq(&["analyze"])), 2);
    assert_eq!(code(&exactq(&["frobnicate"])), 2);
}

#[test]
fn synth_examples() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("nae.json");
    let out = exactq(&["synth", "--fn", "profile:0,1,1,0", "--out", path_str(&cert), "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["claimed_queries"], 2);
    assert_eq!(v["level"], "FullySimulated");
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(written["schema"], "exactq.certificate/1");

    let v = json(&exactq(&["synth", "--fn", "bin:0000000000000001", "--format", "json"]));
    assert_eq!(v["claimed_queries"], 4);
    assert_eq!(v["optimal"], true);

    let v = json(&exactq(&["synth", "--fn", "profile:0,0,1,0", "--format", "json"]));
    assert_eq!(v["claimed_queries"], 2);
    assert_eq!(v["level"], "CountCertified");
    assert_eq!(v["axioms"][0]["class"], "EXACT_3^2");
}

#[test]
fn simulate_programs_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let parity = dir.path().join("parity4.json");
    assert_eq!(code(&exactq(&["program", "parity", "--n", "4", "--out", path_str(&parity)])), 0);
    let v = json(&exactq(&["simulate", path_str(&parity), "--fn", "profile:0,1,0,1,0", "--format", "json"]));
    assert_eq!(v["report"]["exact"], true);
    assert_eq!(v["report"]["queries_used_worst_case"], 2);

    // a bare program needs a target function
    assert_eq!(code(&exactq(&["simulate", path_str(&parity)])), 2);

    // same program against the wrong function
    let out = exactq(&["simulate", path_str(&parity), "--fn", "profile:1,0,1,0,1"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("failing inputs"));

    let nae = dir.path().join("nae5.json");
    assert_eq!(code(&exactq(&["program", "nae", "--n", "5", "--out", path_str(&nae)])), 0);
    let v = json(&exactq(&["simulate", path_str(&nae), "--fn", "profile:0,1,1,1,1,0", "--format", "json"]));
    assert_eq!(v["report"]["exact"], true);
    assert_eq!(v["report"]["queries_used_worst_case"], 4);

    let cert = dir.path().join("exact.json");
    assert_eq!(code(&exactq(&["synth", "--fn", "profile:0,0,1,0", "--out", path_str(&cert)])), 0);
    let out = exactq(&["simulate", path_str(&cert)]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("not simulatable") && err.contains("root"), "{err}");
}

#[test]
fn tampered_program_names_failing_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    assert_eq!(code(&exactq(&["program", "parity", "--n", "2", "--out", path_str(&p)])), 0);
    let text = std::fs::read_to_string(&p).unwrap();
    // flip the first output leaf
    let tampered = text.replacen("\"value\": false", "\"value\": true", 1);
    assert_ne!(text, tampered);
    std::fs::write(&p, tampered).unwrap();
    let out = exactq(&["simulate", path_str(&p), "--fn", "profile:0,1,0", "--format", "json"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["report"]["exact"], false);
    assert!(!v["report"]["failing_inputs"].as_array().unwrap().is_empty());
}

#[test]
fn verify_corollary_counts() {
    let out = exactq(&["verify", "--suite", "corollary", "--max-n", "5", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let m = &v["suites"][0]["metrics"];
    assert_eq!((m["and_isomorphic_n3"].as_u64(), m["and_isomorphic_n4"].as_u64()), (Some(16), Some(32)));
    assert_eq!(m["and_isomorphic_n5"], 64);
}

#[test]
fn verify_is_job_independent() {
    let run = |jobs: &str| {
        let out = exactq(&[
            "verify", "--suite", "theorem1,classical-depth", "--max-n", "6", "--samples", "200", "--seed", "3",
            "--jobs", jobs, "--format", "json",
        ]);
        assert_eq!(code(&out), 0);
        let mut v = json(&out);
        for s in v["suites"].as_array_mut().unwrap() {
            s["wall_time_ms"] = Value::Null;
        }
        v
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(code(&exactq(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&exactq(&["verify", "--suite", "theorem1", "--max-n", "11"])), 2);
    assert_eq!(code(&exactq(&["verify", "--suite", "corollary", "--jobs", "0"])), 2);
}

#[test]
fn max_n_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_exactq"))
        .args(["verify", "--suite", "corollary", "--format", "json"])
        .env("EXACTQ_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["suites"][0]["metrics"].get("and_isomorphic_n5").is_none());
    assert_eq!(v["suites"][0]["metrics"]["and_isomorphic_n4"], 32);
}
