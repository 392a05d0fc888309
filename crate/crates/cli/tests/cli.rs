use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use rsdlog::qsim::{tau_bw, tau_gs, tau_perp, tau_prime, tau_required, tau_usd};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsdlog")).args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rsdlog-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn dlog_verified_by_baseline() {
    let v = json_ok(&["dlog", "--q", "16", "--h", "2", "--seed", "7"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["exponent"], v["baseline"]);
    assert_eq!(v["seed"], 7);
}

#[test]
fn pgm_sim_two_bit_example() {
    let v = json_ok(&["pgm-sim", "--q", "2", "--G", "1,1", "--y0", "1,0", "--t", "1", "--trials", "100"]);
    assert_eq!(v["successes"], 100);
    let sols = v["solutions"].as_object().unwrap();
    assert!(sols.keys().all(|k| k == "0,1" || k == "1,0"));
}

#[test]
fn malformed_instance_reports_path() {
    let bad = temp(
        "bad.json",
        r#"{"code": {"q": 7, "n": 7, "k": 3, "eval_points": [[0],[1],[2],[3],[4],[5],[6]]}, "received": [[0],[1],[2],[3],[4],[5],[true]]}"#,
    );
    let out = run(&["decode", "--instance", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "input");
    assert_eq!(err["error"]["path"], "received[6][0]");
    let out = run(&["decode", "--instance", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_is_computational() {
    let out = run(&["dlog", "--q", "16", "--h", "2", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "computation");
}

#[test]
fn same_seed_same_bytes() {
    for args in [
        vec!["regev-sim", "--q", "4", "--k", "2", "--tau", "0.3", "--trials", "200", "--seed", "11"],
        vec!["cw-gen", "--q", "16", "--h", "2", "--g", "12", "--planted", "--seed", "11"],
        vec!["pad-mss", "--seed", "11", "--m", "7"],
        vec!["cw-stats", "--q", "9", "--h", "2", "--g", "6", "--samples", "200", "--seed", "11", "--out", "csv"],
    ] {
        let (a, b) = (run(&args), run(&args));
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn params_match_formulas() {
    let (q, h) = (1u64 << 12, 8u64);
    let v = json_ok(&["params", "--q", "4096", "--h", "8"]);
    let k = 3 * h + 4;
    let want: [f64; 4] = [tau_bw(q, k), tau_gs(q, k), tau_usd(q, k).unwrap(), tau_required(q, h)];
    for (row, tau) in v["rows"].as_array().unwrap().iter().zip(want) {
        let perp = tau_perp(tau, q).unwrap();
        assert!((row["tau"].as_f64().unwrap() - tau).abs() < 1e-12);
        assert!((row["tau_perp"].as_f64().unwrap() - perp).abs() < 1e-12);
        assert!((row["tau_prime"].as_f64().unwrap() - tau_prime(perp, q).unwrap()).abs() < 1e-12);
    }
    let csv = run(&["params", "--q", "4096", "--h", "8", "--out", "csv"]);
    assert!(String::from_utf8(csv.stdout).unwrap().starts_with("decoder,tau,tau_perp,tau_prime\n"));
    assert_eq!(run(&["params", "--q", "12", "--h", "1"]).status.code(), Some(2));
}

#[test]
fn generated_instance_round_trips() {
    let gen = run(&["cw-gen", "--q", "16", "--h", "2", "--g", "12", "--planted", "--seed", "3"]);
    assert!(gen.status.success());
    let path = temp("cw.json", &String::from_utf8(gen.stdout).unwrap());
    let v = json_ok(&["cw-demo", "--instance", path.to_str().unwrap()]);
    assert_eq!(v["source"], "witness");
    assert_eq!(v["relations"][0]["verified"], true);
    assert_eq!(v["relations"][0]["support"].as_array().unwrap().len(), 12);

    let demo = json_ok(&["cw-demo", "--q", "81", "--h", "2", "--g", "12", "--trials", "5"]);
    assert_eq!(demo["recovered"], 5);
}

#[test]
fn decode_and_pad_examples() {
    let inst = temp(
        "rs.json",
        r#"{"code": {"q": 7, "n": 7, "k": 3, "eval_points": [[0],[1],[2],[3],[4],[5],[6]]}, "received": [[1],[1],[1],[1],[1],[0],[0]]}"#,
    );
    let v = json_ok(&["decode", "--instance", inst.to_str().unwrap(), "--decoder", "bw"]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["messages"][0], serde_json::json!([[1]]));
    let b = json_ok(&["decode", "--instance", inst.to_str().unwrap(), "--decoder", "brute", "--t", "2"]);
    assert_eq!(b["codewords"], v["codewords"]);

    let mss = temp("mss.json", r#"{"A": [1, 2, 3, 4], "k": 2, "m": [5]}"#);
    let v = json_ok(&["pad-mss", "--instance", mss.to_str().unwrap(), "--m", "252"]);
    assert_eq!(v["padded_size"], 256);
    assert_eq!(v["pad_start"], "14");
    assert_eq!(v["original_yes"], true);
    assert_eq!(v["padded_yes"], true);
}
