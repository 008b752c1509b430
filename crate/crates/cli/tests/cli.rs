use std::process::{Command, Output};

use serde_json::Value;

fn cycind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycind")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = cycind(args);
    let stderr = String::from_utf8_lossy(&out.stderr);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}; stderr: {stderr}"));
    (v, out.status.code().unwrap())
}

fn strip_timestamps(mut v: Value) -> Value {
    let m = v["manifest"].as_object_mut().unwrap();
    m.remove("started_at");
    m.remove("finished_at");
    if let Some(r) = v.get_mut("result").and_then(Value::as_object_mut) {
        r.remove("runtime_ms");
    }
    v
}

#[test]
fn count_single_cycle() {
    let (v, code) = json(&["count", "--construct", "cycle:7", "--k", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["total"], 1);
    assert_eq!(v["graph"]["n"], 7);
}

#[test]
fn count_iterated_blow_up() {
    let (v, code) = json(&["count", "--construct", "iterated-blowup:C5:depth=2", "--k", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["total"], 3130);
}

#[test]
fn count_check_agrees_on_random_graph() {
    let (v, code) = json(&["count", "--construct", "random:12,0.5", "--k", "5", "--check", "--seed", "9", "--roots", "vertex"]);
    assert_eq!(code, 0);
    assert_eq!(v["check"]["agree"], true);
    assert_eq!(v["check"]["oracle_total"], v["check"]["fast_total"]);
    assert_eq!(v["report"]["rooted"].as_array().unwrap().len(), 12);
    assert_eq!(v["manifest"]["derived_seeds"][0][0], "construct");
}

#[test]
fn count_reads_graph_files_and_digests_them() {
    let dir = std::env::temp_dir().join(format!("cycind-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g6 = dir.join("c5.g6");
    let out = cycind(&["construct", "--construct", "blowup:C5:2", "--write", g6.to_str().unwrap()]);
    assert!(out.status.success());
    let el = dir.join("c5.txt");
    let out = cycind(&["construct", "--construct", "blowup:C5:2", "--write", el.to_str().unwrap(), "--format", "edgelist"]);
    assert!(out.status.success());
    for path in [&g6, &el] {
        let (v, code) = json(&["count", "--input", path.to_str().unwrap(), "--k", "5", "--mode", "oracle"]);
        assert_eq!(code, 0);
        assert_eq!(v["report"]["total"], 32);
        assert_eq!(v["manifest"]["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unsupported_k_is_a_usage_error() {
    let out = cycind(&["count", "--construct", "cycle:5", "--k", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn search_exhaustive_small_orders() {
    let (v, code) = json(&["search", "--n", "5", "--k", "5", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["best_count"], 1);
    let (v, code) = json(&["search", "--n", "6", "--k", "4", "--mode", "exhaustive"]);
    assert_eq!(code, 0);
    assert!(v["result"]["best_count"].as_u64().unwrap() >= 9);
    assert_eq!(v["witnesses_verified"], true);
}

#[test]
fn search_local_reaches_the_blow_up() {
    let (v, code) = json(&["search", "--n", "25", "--k", "5", "--local", "--seed", "1", "--budget", "2000"]);
    assert_eq!(code, 0);
    assert!(v["result"]["best_count"].as_u64().unwrap() >= 3130);
    assert_eq!(v["result"]["exhaustive"], false);
}

#[test]
fn search_is_reproducible_and_cached() {
    let dir = std::env::temp_dir().join(format!("cycind-cache-{}", std::process::id()));
    let args = ["search", "--n", "9", "--k", "5", "--local", "--seed", "4", "--budget", "500", "--cache", dir.to_str().unwrap()];
    let (a, _) = json(&args);
    let (b, _) = json(&args);
    assert_eq!(a["cached"], false);
    assert_eq!(b["cached"], true);
    let (c, _) = json(&args[..args.len() - 2]);
    assert_eq!(strip_timestamps(a.clone())["result"], strip_timestamps(c)["result"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exhaustive_ceiling_needs_override() {
    let out = cycind(&["search", "--n", "8", "--k", "5", "--exhaustive"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_analytic_final_constant() {
    let (v, code) = json(&["verify", "--suite", "analytic"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    let fc = v["analytic"]["final_constant"].as_f64().unwrap();
    assert!((fc - 4.29553).abs() < 1e-4, "{fc}");
    assert!((fc - 128.0 * std::f64::consts::E / 81.0).abs() < 1e-9);
    let problems = v["analytic"]["problems"].as_array().unwrap();
    assert!(problems.iter().all(|p| p["pass"] == true && !p["checks"].as_array().unwrap().is_empty()));
}

#[test]
fn verify_identities_counts_every_instance() {
    let (v, code) = json(&["verify", "--suite", "identities", "--instances", "60", "--graphs", "10", "--seed", "3"]);
    assert_eq!(code, 0);
    let r = &v["identities"];
    assert_eq!(r["symmetrisation_instances"], 60);
    assert_eq!(r["symmetrisation_passed"], 60);
    assert_eq!(r["handshake_passed"], r["handshake_instances"]);
    assert_eq!(r["symmetrisation"].as_array().unwrap().len(), 60);
    assert_eq!(r["k4_counterexample"]["pass"], false);
}

#[test]
fn verify_bounds_has_no_violations() {
    let (v, code) = json(&["verify", "--suite", "bounds"]);
    assert_eq!(code, 0);
    assert_eq!(v["bounds"]["violations"], 0);
    assert!(v["bounds"]["checked"].as_u64().unwrap() > 10_000);
}

#[test]
fn verify_output_is_deterministic() {
    let args = ["verify", "--suite", "identities", "--instances", "20", "--graphs", "5", "--seed", "11"];
    let (a, _) = json(&args);
    let (b, _) = json(&args);
    assert_eq!(strip_timestamps(a), strip_timestamps(b));
}

#[test]
fn bounds_command_reports_case_split() {
    let (v, code) = json(&["bounds", "--construct", "petersen", "--k", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["audit"]["violations"].as_array().unwrap().len(), 0);
    assert!(v["min_degree"]["pass"].as_bool().unwrap());
    assert!(v["bracket"]["lower"].as_f64().unwrap() < v["bracket"]["upper"].as_f64().unwrap());
}
