//! End-to-end runs of the binary against the shipped fixtures.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_stochord")
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn counterexamples_report_sign_changes() {
    for which in ["ce1", "ce2", "ce3"] {
        let out = run(&["counterexample", "--which", which]);
        assert!(out.status.success(), "{which}: {:?}", out);
        let v = stdout_json(&out);
        assert_eq!(v["sign_change"], serde_json::json!(true), "{which}");
        assert!(!v["crossing_locations"].as_array().unwrap().is_empty());
    }
}

#[test]
fn counterexample_csv_output() {
    let dir = std::env::temp_dir().join("stochord_cli_test_ce");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("ce1.csv");
    let out = run(&[
        "counterexample",
        "--which",
        "ce1",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,diff,model_A_value,model_B_value");
    let first = lines.next().unwrap();
    assert_eq!(first.split(',').count(), 4);
    // 17 significant digits, exponent form
    assert!(first.split(',').next().unwrap().contains('e'));
    assert_eq!(text.lines().count(), 513);
}

#[test]
fn check_order_same_file_holds() {
    let a = fixtures().join("ce1_x.json");
    let out = run(&[
        "check-order",
        "--a",
        a.to_str().unwrap(),
        "--b",
        a.to_str().unwrap(),
        "--order",
        "st",
    ]);
    assert!(out.status.success(), "{out:?}");
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], serde_json::json!("Holds"));
}

#[test]
fn check_order_fails_with_exit_one() {
    // rate-1 exponential is NOT stochastically below rate-2
    let dir = std::env::temp_dir().join("stochord_cli_test_order");
    std::fs::create_dir_all(&dir).unwrap();
    let mk = |rate: f64| {
        format!(
            r#"{{"side":"min","baseline":{{"name":"exponential","params":[{rate}]}},
                "alphas":[1.0],"gammas":[1.0],
                "generator":{{"family":"independence"}},
                "ndist":{{"support":[1],"probs":[1.0]}}}}"#
        )
    };
    let slow = dir.join("slow.json");
    let fast = dir.join("fast.json");
    std::fs::write(&slow, mk(1.0)).unwrap();
    std::fs::write(&fast, mk(2.0)).unwrap();
    let out = run(&[
        "check-order",
        "--a",
        slow.to_str().unwrap(),
        "--b",
        fast.to_str().unwrap(),
        "--order",
        "st",
    ]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    // and the reversed pair holds
    let out = run(&[
        "check-order",
        "--a",
        fast.to_str().unwrap(),
        "--b",
        slow.to_str().unwrap(),
        "--order",
        "st",
    ]);
    assert!(out.status.success());
}

#[test]
fn verify_theorem_random_suite() {
    let out = run(&[
        "verify-theorem",
        "--id",
        "T1",
        "--random",
        "--trials",
        "25",
        "--seed",
        "7",
    ]);
    assert!(out.status.success(), "{out:?}");
    let v = stdout_json(&out);
    assert_eq!(v["contradictions"], serde_json::json!(0));
    assert_eq!(v["trials"], serde_json::json!(25));
}

#[test]
fn verify_theorem_on_counterexample_pair() {
    let a = fixtures().join("ce1_x.json");
    let b = fixtures().join("ce1_y.json");
    let out = run(&[
        "verify-theorem",
        "--id",
        "T1",
        "--a",
        a.to_str().unwrap(),
        "--b",
        b.to_str().unwrap(),
    ]);
    // hypotheses unmet, not a contradiction: exit 0
    assert!(out.status.success(), "{out:?}");
    let v = stdout_json(&out);
    assert_eq!(v["overall"], serde_json::json!("HypothesesUnmet"));
    assert_eq!(v["conclusion"]["verdict"], serde_json::json!("Fails"));
}

#[test]
fn eval_writes_curve() {
    let model = fixtures().join("kw_weibull_poisson.json");
    let out = run(&[
        "eval",
        "--model",
        model.to_str().unwrap(),
        "--what",
        "cdf",
        "--xmin",
        "0.1",
        "--xmax",
        "5.0",
        "--points",
        "10",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().next().unwrap(), "x,value");
    assert_eq!(text.lines().count(), 11);
    // values nondecreasing
    let vals: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(vals.windows(2).all(|w| w[1] >= w[0] - 1e-12));
}

#[test]
fn sample_writes_draws_and_metadata() {
    let dir = std::env::temp_dir().join("stochord_cli_test_sample");
    std::fs::create_dir_all(&dir).unwrap();
    let model = fixtures().join("kw_exponential_poisson.json");
    let out_path = dir.join("draws.csv");
    let out = run(&[
        "sample",
        "--model",
        model.to_str().unwrap(),
        "--size",
        "2000",
        "--seed",
        "11",
        "--out",
        out_path.to_str().unwrap(),
        "--check",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().count(), 2001);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("draws.meta.json")).unwrap())
            .unwrap();
    assert_eq!(meta["seed"], serde_json::json!(11));
    assert_eq!(meta["size"], serde_json::json!(2000));
    assert!(meta["model_hash"].as_str().unwrap().len() == 64);
    assert!(meta["sup_distance"].as_f64().unwrap() < 0.05);
    // determinism: the same invocation reproduces the draws bit-for-bit
    let out2_path = dir.join("draws2.csv");
    let out2 = run(&[
        "sample",
        "--model",
        model.to_str().unwrap(),
        "--size",
        "2000",
        "--seed",
        "11",
        "--out",
        out2_path.to_str().unwrap(),
    ]);
    assert!(out2.status.success());
    assert_eq!(text, std::fs::read_to_string(&out2_path).unwrap());
}

#[test]
fn scan_reports_relaxations() {
    let out = run(&["scan", "--id", "T8", "--trials", "20", "--seed", "3"]);
    assert!(out.status.success(), "{out:?}");
    let v = stdout_json(&out);
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 3);
    let maj = arr
        .iter()
        .find(|r| r["slot"] == serde_json::json!("Majorization"))
        .unwrap();
    assert!(maj["hypothesis_false"].as_u64().unwrap() > 0);
    assert_eq!(maj["contradictions"], serde_json::json!(0));
}

#[test]
fn thread_cap_env_var_is_honored() {
    // results must be identical under a capped pool
    let out = Command::new(bin())
        .env("STOCHORD_THREADS", "1")
        .args([
            "verify-theorem",
            "--id",
            "T6",
            "--random",
            "--trials",
            "10",
            "--seed",
            "5",
        ])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{out:?}");
    let capped = stdout_json(&out);
    let free = stdout_json(&run(&[
        "verify-theorem",
        "--id",
        "T6",
        "--random",
        "--trials",
        "10",
        "--seed",
        "5",
    ]));
    assert_eq!(capped, free);
}

#[test]
fn unknown_flags_exit_two() {
    let out = run(&["counterexample", "--which", "ce1", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // bad config file exits 2
    let dir = std::env::temp_dir().join("stochord_cli_test_bad");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"side\": \"max\"}").unwrap();
    let out = run(&["eval", "--model", bad.to_str().unwrap(), "--what", "cdf"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shipped_ce_fixtures_match_builtins() {
    // the JSON fixtures must describe exactly the hard-coded models
    for (x, y, which) in [
        ("ce1_x.json", "ce1_y.json", "ce1"),
        ("ce2_x.json", "ce2_y.json", "ce2"),
        ("ce3_x.json", "ce3_y.json", "ce3"),
    ] {
        for (file, side) in [(x, "a"), (y, "b")] {
            let path = fixtures().join(file);
            let text = std::fs::read_to_string(&path).unwrap();
            let cfg = stochord::config::ModelConfig::from_json(&text).unwrap();
            let model = cfg.to_model().unwrap();
            let (a, b) = stochord::theorems::counterexample_models(
                stochord::theorems::Counterexample::parse(which).unwrap(),
            );
            let builtin = if side == "a" { a } else { b };
            assert_eq!(model, builtin, "{file} drifted from the built-in fixture");
        }
    }
}
