use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stochval"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["schema"], "stochval.report/v1");
    v
}

fn parse_rat(v: &Value) -> (i64, i64) {
    let s = v.as_str().expect("rational string");
    match s.split_once('/') {
        Some((a, b)) => (a.parse().unwrap(), b.parse().unwrap()),
        None => (s.parse().unwrap(), 1),
    }
}

#[test]
fn pennies_bracket() {
    let v = report(&["solve-discounted", "--game", "pennies.json", "--state", "1", "--lambda", "1/2", "--bits", "3"]);
    let approx = &v["result"]["approx"];
    assert_eq!(approx["u"], "4");
    assert_eq!(approx["interval"]["lower"], "1/2");
    assert_eq!(approx["interval"]["upper"], "5/8");
    assert!(v["bounds"]["reconstruction"]["r"].as_u64().unwrap() > 0);
    assert!(v["audit"]["approx"]["peak_entry_bits"].as_u64().unwrap() <= v["audit"]["approx"]["entry_bit_bound"].as_u64().unwrap());
}

#[test]
fn kohlberg_threshold_reports_both_parameterizations() {
    let v = report(&["lambda-threshold", "--game", "kohlberg.json", "--bits", "1", "--threshold", "tight"]);
    assert_eq!(v["result"]["exponent"], 119);
    assert_eq!(v["result"]["denominator"], "2");
    assert_eq!(v["result"]["raw"]["exponent"], 103);
    assert_eq!(v["result"]["lambda"], "1/2^119");
    let simple = report(&["lambda-threshold", "--game", "kohlberg", "--bits", "1", "--threshold", "simple"]);
    assert!(simple["result"]["exponent"].as_u64().unwrap() > 119);
}

#[test]
fn corpus_commands() {
    let v = report(&["corpus", "list"]);
    let names: Vec<&str> = v["result"]["games"].as_array().unwrap().iter().map(|n| n.as_str().unwrap()).collect();
    for expected in ["absorbing1", "bigmatch", "kohlberg", "pennies"] {
        assert!(names.contains(&expected), "{expected}");
    }
    let shown = report(&["corpus", "show", "kohlberg"]);
    assert_eq!(shown["result"]["states"], 4);
    assert_eq!(shown["result"]["normalization"]["scale"], "1/2");

    let exported = run(&["corpus", "export", "bigmatch"]);
    assert!(exported.status.success());
    let path = std::env::temp_dir().join(format!("stochval-cli-{}-bigmatch.json", std::process::id()));
    std::fs::write(&path, &exported.stdout).unwrap();
    let from_file = report(&["--deterministic", "solve-discounted", "--game", path.to_str().unwrap(), "--state", "1", "--lambda", "1/4", "--bits", "6"]);
    let from_corpus = report(&["--deterministic", "solve-discounted", "--game", "corpus:bigmatch", "--state", "1", "--lambda", "1/4", "--bits", "6"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(from_file["result"], from_corpus["result"]);
}

#[test]
fn deterministic_output_is_byte_identical() {
    let args = ["--deterministic", "solve-limit", "--game", "golden", "--state", "1", "--bits", "5"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let seq = run(&["--deterministic", "--sequential", "solve-limit", "--game", "golden", "--state", "1", "--bits", "5"]);
    assert_eq!(a.stdout, seq.stdout);

    let timed = report(&["solve-limit", "--game", "golden", "--state", "1", "--bits", "5"]);
    assert!(timed["timing"]["elapsed_ms"].is_number());
    let untimed: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(untimed.get("timing").is_none());
}

#[test]
fn exact_discounted_value_of_golden() {
    let v = report(&["solve-discounted", "--game", "golden", "--state", "1", "--lambda", "1/2", "--exact"]);
    let exact = &v["result"]["exact"];
    assert_eq!(exact["polynomial"], serde_json::json!(["-1", "1", "1"]));
    assert!(v["result"].get("approx").is_none());
}

#[test]
fn limit_interval_contains_one_half() {
    for method in ["fast", "direct"] {
        let v = report(&["solve-limit", "--game", "golden", "--state", "1", "--bits", "6", "--method", method]);
        let (a, b) = parse_rat(&v["result"]["approx"]["interval"]["lower"]);
        let (c, d) = parse_rat(&v["result"]["approx"]["interval"]["upper"]);
        assert!(2 * a <= b && 2 * c >= d, "{method}: {v}");
        assert!(v["bounds"]["lambda_exponent"].as_u64().unwrap() > 0);
    }
}

#[test]
fn oracle_agrees_with_bisection() {
    let vi = report(&["oracle", "value-iteration", "--game", "bigmatch", "--lambda", "1/4", "--eps", "2^-20"]);
    let (p, q) = parse_rat(&vi["result"]["values"][0]);
    let (ep, eq) = parse_rat(&vi["result"]["error_bound"]);
    let bis = report(&["solve-discounted", "--game", "bigmatch", "--state", "1", "--lambda", "1/4", "--bits", "12"]);
    let (lp, lq) = parse_rat(&bis["result"]["approx"]["interval"]["lower"]);
    let (up, uq) = parse_rat(&bis["result"]["approx"]["interval"]["upper"]);
    let x = p as f64 / q as f64;
    let e = ep as f64 / eq as f64;
    assert!(x + e >= lp as f64 / lq as f64 && x - e <= up as f64 / uq as f64);
}

#[test]
fn matrix_games() {
    let v = report(&["matgame", "--matrix", "1,0,1/2;1/2,1,0;0,1/2,1"]);
    assert_eq!(v["result"]["value"], "1/2");
    assert_eq!(v["result"]["enumeration_value"], "1/2");
    assert_eq!(v["result"]["certified"], true);
    let wide = report(&["matgame", "--matrix", "1,2,3,4;4,3,2,1"]);
    assert_eq!(wide["result"]["value"], "5/2");
    assert!(wide["result"].get("enumeration_value").is_none());
}

#[test]
fn validation_failures_exit_with_two() {
    let dir = std::env::temp_dir();
    let bad = dir.join(format!("stochval-cli-{}-bad.json", std::process::id()));
    std::fs::write(&bad, r#"{"n": 1, "actions1": [1]}"#).unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["solve-discounted", "--game", "missing-file.json", "--state", "1", "--lambda", "1/2", "--bits", "3"],
        vec!["solve-discounted", "--game", bad.to_str().unwrap(), "--state", "1", "--lambda", "1/2", "--bits", "3"],
        vec!["solve-discounted", "--game", "pennies", "--state", "0", "--lambda", "1/2", "--bits", "3"],
        vec!["solve-discounted", "--game", "pennies", "--state", "1", "--lambda", "0", "--bits", "3"],
        vec!["solve-discounted", "--game", "pennies", "--state", "1", "--lambda", "1/2"],
        vec!["solve-discounted", "--game", "pennies", "--state", "1", "--lambda", "x", "--bits", "3"],
        vec!["oracle", "value-iteration", "--game", "pennies", "--lambda", "1/2", "--eps", "0"],
        vec!["matgame", "--matrix", "1,2;3"],
        vec!["corpus", "show", "nothing"],
        vec!["solve-limit", "--game", "pennies", "--state", "1", "--bits", "3", "--unknown"],
    ];
    for args in &cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
    std::fs::remove_file(&bad).ok();
}
