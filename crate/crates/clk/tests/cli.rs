use std::process::{Command, Output};

use clk::{parse_complex_f64, run};
use serde_json::Value;

fn clk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clk")).args(args).output().expect("spawn clk")
}

fn in_process(args: &[&str]) -> (u8, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("clk").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = in_process(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn connected_sum_report() {
    let v = json(&["invariant", "3_1 # 4_1", "--format", "json"]);
    assert_eq!(v["chi_cl"], 3);
    assert_eq!(v["decomposition"]["atoms"], serde_json::json!([1, 2]));
    assert_eq!(v["decomposition"]["type_ii_chi"], 0);
}

#[test]
fn report_schema_keys() {
    let v = json(&["invariant", "4_1", "--format", "json", "--samples", "6"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["knot", "chi_cl", "bad_set", "slices", "decomposition"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert!(v["decomposition"].is_null());
    let c = &v["bad_set"][0];
    assert!(c["poly"].is_array() && c["provenance"].is_string() && c["roots"][0].as_array().unwrap().len() == 2);
    let s = &v["slices"][0];
    assert_eq!(s["tau"].as_array().unwrap().len(), 4);
    assert_eq!(s["chi_b"], 2);
    assert_eq!(s["generic"], true);
    let p = &s["points"][0];
    assert!(p["y"].is_array() && p["mult"].is_u64() && p["excluded"].is_boolean());
}

#[test]
fn figure_eight_bad_set() {
    let v = json(&["bad-set", "4_1", "--format", "json"]);
    let mut roots: Vec<f64> = v["distinct_roots"].as_array().unwrap().iter().map(|r| r[0].as_f64().unwrap()).collect();
    roots.sort_by(f64::total_cmp);
    let r5 = 5f64.sqrt();
    let want = [-r5, -2.0, -1.0, 1.0, 2.0, r5];
    assert_eq!(roots.len(), 6);
    assert!(roots.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-12));
    let provenances: Vec<&str> = v["bad_set"].as_array().unwrap().iter().map(|c| c["provenance"].as_str().unwrap()).collect();
    assert_eq!(provenances, ["discriminant", "leading_coeff", "abelian_resultant", "alexander", "parabolic"]);
}

#[test]
fn figure_eight_monodromy() {
    let v = json(&["monodromy", "4_1", "--center", "1", "--radius", "0.1", "--format", "json"]);
    assert_eq!(v["loops"][0]["permutation"], serde_json::json!([[0, 1], [1, 0]]));
    let v = json(&["monodromy", "4_1", "--center", "3+0i", "--format", "json"]);
    assert_eq!(v["loops"][0]["permutation"], serde_json::json!([[1, 0], [0, 1]]));
}

#[test]
fn monodromy_csv_path_dump() {
    let (code, out, _) = in_process(&["monodromy", "4_1", "--center", "1", "--steps", "16", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("loop,theta,root,re_y,im_y"));
    assert!(lines.count() >= 2 * 17);
}

#[test]
fn charpoly_and_alexander() {
    let v = json(&["charpoly", "2b(5,3)", "--format", "json"]);
    assert_eq!(v["y_degree"], 2);
    assert_eq!(v["poly"], "y^2 - x^2*y - y + 2*x^2 - 1");
    let v = json(&["alexander", "4_1", "--format", "json"]);
    assert_eq!(v["coeffs"], serde_json::json!([1, -3, 1]));
}

#[test]
fn sweep_at_exact_trace() {
    let v = json(&["sweep", "4_1", "--tau", "1/2+3/4i", "--format", "json", "--samples", "4"]);
    assert_eq!(v["slices"].as_array().unwrap().len(), 1);
    assert_eq!(v["slices"][0]["tau"], serde_json::json!([1, 2, 3, 4]));
    assert_eq!(v["slices"][0]["chi_b"], 2);
    let v = json(&["sweep", "4_1", "--tau", "1", "--format", "json", "--samples", "4"]);
    assert_eq!(v["slices"][0]["generic"], false);
}

#[test]
fn identical_arguments_give_identical_bytes() {
    let args = ["invariant", "3_1 # 5_2", "--format", "json", "--seed", "7"];
    let a = clk(&args);
    let b = clk(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(clk(&["invariant", "3_1", "--unknown"]).status.code(), Some(2));
    assert_eq!(clk(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(clk(&["invariant", "3_1", "--format", "yaml"]).status.code(), Some(2));
    assert_eq!(clk(&["sweep", "3_1 # 4_1"]).status.code(), Some(2));
    let parabolic = clk(&["sweep", "4_1", "--tau", "-2"]);
    assert_eq!(parabolic.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&parabolic.stderr).contains("ParabolicTrace"));
    let near_bad = clk(&["monodromy", "4_1", "--center", "0.5", "--radius", "0.5"]);
    assert_eq!(near_bad.status.code(), Some(1));
    assert_eq!(clk(&["--help"]).status.code(), Some(0));
}

#[test]
fn parse_errors_are_annotated() {
    let (code, _, err) = in_process(&["invariant", "3_1 # 9_9"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 6"), "{err}");
    assert!(err.contains("\n  3_1 # 9_9\n        ^"), "{err}");
    let (code, _, err) = in_process(&["sweep", "4_1", "--tau", "1/0"]);
    assert_eq!(code, 2);
    assert!(err.contains("zero denominator"), "{err}");
    let (code, _, err) = in_process(&["bad-set", "3_1", "--format", "json", "#"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn structured_domain_error_in_json_mode() {
    let (code, _, err) = in_process(&["sweep", "4_1", "--tau", "2", "--format", "json"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(err.trim()).unwrap();
    assert_eq!(v["kind"], "ParabolicTrace");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (code, out, _) = in_process(&["charpoly", "3_1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["poly"], "y - 1");
}

#[test]
fn corpus_file_with_bounded_threads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.txt");
    std::fs::write(&path, "3_1\n// comment\n\n4_1 # 3_1\n8_9\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_clk"))
        .args(["corpus", path.to_str().unwrap(), "--format", "json", "--samples", "8"])
        .env("CLK_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 3);
    assert_eq!(entries[0]["chi_cl"], 1);
    assert_eq!(entries[1]["chi_cl"], 3);
    assert_eq!(entries[2]["error"]["kind"], "Parse");
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_clk")).args(["corpus"]).env("CLK_THREADS", "0").output().unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn verify_cstar_on_a_sum() {
    let v = json(&["verify-cstar", "3_1 # 4_1", "--pairs", "20", "--format", "json"]);
    assert_eq!(v["certificates"], 20);
    assert_eq!(v["type_ii_chi"], 0);
    assert!(v["min_separation"].as_f64().unwrap() > 1e-6);
    assert!(v["max_action_defect"].as_f64().unwrap() < 1e-8);
}

#[test]
fn float_complex_flags() {
    let z = parse_complex_f64("1.5-2e-3i").unwrap();
    assert_eq!((z.re, z.im), (1.5, -2e-3));
    let z = parse_complex_f64(" -i ").unwrap();
    assert_eq!((z.re, z.im), (0.0, -1.0));
    let z = parse_complex_f64("2.236").unwrap();
    assert_eq!((z.re, z.im), (2.236, 0.0));
    let z = parse_complex_f64("1e-2+1e+1i").unwrap();
    assert_eq!((z.re, z.im), (0.01, 10.0));
    assert!(parse_complex_f64("1+xi").is_err());
    assert!(parse_complex_f64("").is_err());
}
