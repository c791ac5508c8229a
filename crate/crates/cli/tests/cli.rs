use std::process::{Command, Output};

use serde_json::Value;

fn schurc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schurc"))
        .args(args)
        .output()
        .expect("run schurc")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = schurc(&full);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

fn rows(v: &Value) -> &Vec<Value> {
    v["results"]["rows"].as_array().unwrap()
}

#[test]
fn dims_qubits_four_copies() {
    let v = json(&["dims", "--n", "4", "--d", "2"]);
    let got: Vec<(String, u64, u64)> = rows(&v)
        .iter()
        .map(|r| {
            (
                r["j"].as_str().unwrap().to_string(),
                r["d_lambda"].as_u64().unwrap(),
                r["m_lambda"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(got, [("2".into(), 5, 1), ("1".into(), 3, 3), ("0".into(), 1, 2)]);
    assert_eq!(v["results"]["sum_d_lambda_m_lambda"], 16);
    assert_eq!(v["results"]["d_pow_n"], 16);
}

#[test]
fn dims_qutrits_three_copies() {
    let v = json(&["dims", "--n", "3", "--d", "3"]);
    let got: Vec<(Value, u64, u64)> = rows(&v)
        .iter()
        .map(|r| {
            (
                r["lambda"].clone(),
                r["d_lambda"].as_u64().unwrap(),
                r["m_lambda"].as_u64().unwrap(),
            )
        })
        .collect();
    let want = [
        (serde_json::json!([3, 0, 0]), 10, 1),
        (serde_json::json!([2, 1, 0]), 8, 2),
        (serde_json::json!([1, 1, 1]), 1, 1),
    ];
    assert_eq!(got, want);
    assert_eq!(v["results"]["d_pow_n"], 27);
    assert_eq!(v["results"]["complete"], true);
}

#[test]
fn json_round_trips() {
    let v = json(&["dims", "--n", "4", "--d", "2"]);
    assert_eq!(v["command"], "dims");
    assert_eq!(v["params"]["n"], 4);
    assert!(v["version"].is_string());
    let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(again, v);
}

#[test]
fn qdist_qubit_pair() {
    let v = json(&["qdist", "--n", "2", "--spectrum", "0.75,0.25"]);
    let q: Vec<f64> = rows(&v).iter().map(|r| f(&r["q"])).collect();
    assert!((q[0] - 0.8125).abs() < 1e-10 && (q[1] - 0.1875).abs() < 1e-10, "{q:?}");
}

#[test]
fn qdist_qutrit_triple() {
    let v = json(&["qdist", "--n", "3", "--spectrum", "0.5,0.3,0.2"]);
    let q: Vec<f64> = rows(&v).iter().map(|r| f(&r["q"])).collect();
    for (got, want) in q.iter().zip([0.41, 0.56, 0.03]) {
        assert!((got - want).abs() < 1e-10, "{q:?}");
    }
    assert!((f(&v["results"]["total"]) - 1.0).abs() < 1e-10);
}

#[test]
fn qdist_maximally_mixed_limit() {
    let n = 7u32;
    let v = json(&["qdist", "--n", "7", "--spectrum", "0.5,0.5"]);
    for r in rows(&v) {
        let lambda: Vec<u64> = r["lambda"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        let two_j = lambda[0] - lambda[1];
        let k = (n as u64 - two_j) / 2;
        let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
        let m = binom(n as u64, k) - if k > 0 { binom(n as u64, k - 1) } else { 0 };
        let want = (two_j + 1) as f64 * m as f64 / 2f64.powi(n as i32);
        assert!((f(&r["q"]) - want).abs() < 1e-10);
    }
}

#[test]
fn spectrum_must_sum_to_one() {
    let out = schurc(&["qdist", "--n", "2", "--spectrum", "0.7,0.2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(schurc(&["qdist", "--n", "2", "--spectrum", "0.7,0.3000000001"])
        .status
        .success());
}

#[test]
fn plan_twenty_copies_eight_qubits() {
    let v = json(&["plan", "--n", "20", "--spectrum", "0.6,0.4", "--epsilon", "0.01"]);
    assert!(v["results"]["qubit_count"].as_u64().unwrap() <= 8);
    assert_eq!(v["results"]["kind"], "qubit-interval");
}

#[test]
fn plan_zero_error_twenty_copies() {
    let v = json(&["plan", "--n", "20", "--spectrum", "0.6,0.4", "--zero-error"]);
    let r = &v["results"];
    assert_eq!(r["d_enc"], 121);
    assert_eq!(r["qubit_count"], 7);
    assert_eq!(
        (r["hybrid_qubits"].as_u64(), r["hybrid_bits"].as_u64()),
        (Some(5), Some(4))
    );
    assert_eq!(r["keep"].as_array().unwrap().len(), 11);
    assert_eq!(r["keep"][0], serde_json::json!([20, 0]));
}

#[test]
fn plan_degenerate_qutrit() {
    let v = json(&["plan", "--n", "30", "--spectrum", "0.5,0.25,0.25", "--epsilon", "0.1"]);
    let r = &v["results"];
    assert_eq!(r["degeneracy_m"], 1);
    // (2dr − r² − 1 − m)/2 · log₂(N + d − 1) with d = r = 3, m = 1
    assert!((f(&r["leading_qubits"]) - 3.5 * 32f64.log2()).abs() < 1e-8);
    assert!(f(&r["bound_qubits_nondegenerate"]) > 0.0);
}

#[test]
fn plan_epsilon_on_maximally_mixed_is_not_applicable() {
    let out = schurc(&["plan", "--n", "20", "--spectrum", "0.5,0.5", "--epsilon", "0.1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not applicable"));
}

#[test]
fn plan_needs_a_mode() {
    assert_eq!(
        schurc(&["plan", "--n", "20", "--spectrum", "0.6,0.4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        schurc(&["plan", "--n", "x", "--spectrum", "0.6,0.4"]).status.code(),
        Some(2)
    );
}

#[test]
fn simulate_headline_passes() {
    let v = json(&["simulate", "--n", "20", "--spectrum", "0.6,0.4", "--epsilon", "0.01"]);
    let r = &v["results"];
    assert!(f(&r["exact_error"]) < 0.01);
    assert_eq!(r["verdict"], "PASS");
}

#[test]
fn simulate_error_sandwich() {
    for args in [
        ["simulate", "--n", "4", "--spectrum", "0.75,0.25", "--epsilon", "0.5"],
        ["simulate", "--n", "200", "--spectrum", "0.75,0.25", "--epsilon", "0.1"],
    ] {
        let v = json(&args);
        let r = &v["results"];
        let (e, tail, lower) = (f(&r["exact_error"]), f(&r["tail_mass"]), f(&r["lower_bound"]));
        assert!(lower <= e + 1e-12 && e <= tail + 1e-12, "{args:?}: {lower} {e} {tail}");
        assert_eq!(r["sandwich"], true);
    }
}

#[test]
fn simulate_rotated_zero_error_is_exact() {
    let v = json(&[
        "simulate",
        "--n",
        "9",
        "--spectrum",
        "0.8,0.2",
        "--zero-error",
        "--theta",
        "1.1",
        "--phi",
        "-0.4",
    ]);
    assert!(f(&v["results"]["exact_error"]) < 1e-10);
    assert_eq!(v["results"]["verdict"], "PASS");
}

#[test]
fn simulate_rotated_qutrit_is_unsupported() {
    let out = schurc(&[
        "simulate",
        "--n",
        "4",
        "--spectrum",
        "0.5,0.3,0.2",
        "--epsilon",
        "0.1",
        "--theta",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported"));
}

#[test]
fn sweep_trends_toward_three_halves() {
    let v = json(&[
        "sweep",
        "--n-range",
        "2:16384:*2",
        "--spectrum",
        "0.75,0.25",
        "--epsilon-list",
        "0.01",
    ]);
    let rs = rows(&v);
    assert_eq!(rs.len(), 14);
    let last = &rs[13];
    assert_eq!(last["n"], 16384);
    let ratio = f(&last["qubits_per_log2n"]);
    assert!((1.4..=1.7).contains(&ratio), "{ratio}");
}

#[test]
fn sweep_zero_error_matches_closed_form() {
    let v = json(&["sweep", "--n-range", "2:200:2", "--spectrum", "0.6,0.4", "--zero-error"]);
    for r in rows(&v) {
        let n = r["n"].as_u64().unwrap() as f64;
        let want = (2.0 * (n + 2.0).log2() - 2.0 - 1e-12).ceil() as u64;
        assert_eq!(r["qubit_count"].as_u64().unwrap(), want, "N = {n}");
        assert_eq!(f(&r["exact_error"]), 0.0);
    }
}

#[test]
fn sweep_budget_lower_bound_increases() {
    let v = json(&[
        "sweep",
        "--n-range",
        "64:4096:*2",
        "--spectrum",
        "0.75,0.25",
        "--budget-exponent",
        "1.4",
    ]);
    let lb: Vec<f64> = rows(&v).iter().map(|r| f(&r["lower_bound"])).collect();
    assert_eq!(lb.len(), 7);
    assert!(lb.windows(2).all(|w| w[0] < w[1]), "{lb:?}");
    assert!(lb.iter().all(|&x| x < 0.5));
}

#[test]
fn sweep_rows_are_ordered_and_csv_is_stable() {
    let args = [
        "sweep",
        "--n-range",
        "10:60:10",
        "--spectrum",
        "0.9,0.1",
        "--epsilon-list",
        "0.1,0.01",
        "--format",
        "csv",
    ];
    let a = schurc(&args);
    let b = schurc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let keys: Vec<(u32, String)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',');
            (it.next().unwrap().parse().unwrap(), it.next().unwrap().to_string())
        })
        .collect();
    assert_eq!(keys.len(), 12);
    assert_eq!(keys[0], (10, "0.1".into()));
    assert_eq!(keys[1], (10, "0.01".into()));
    assert_eq!(keys[11], (60, "0.01".into()));
    assert!(text.starts_with("n,epsilon,d_enc,qubit_count,"));
}

#[test]
fn sweep_empty_range_is_a_usage_error() {
    let out = schurc(&[
        "sweep",
        "--n-range",
        "8:4:1",
        "--spectrum",
        "0.6,0.4",
        "--epsilon-list",
        "0.1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_check_examples_pass() {
    for args in [
        vec!["oracle-check", "--n", "4", "--spectrum", "0.75,0.25"],
        vec![
            "oracle-check",
            "--n",
            "5",
            "--spectrum",
            "0.9,0.1",
            "--theta",
            "0.7",
            "--phi",
            "2.1",
        ],
        vec!["oracle-check", "--n", "4", "--spectrum", "0.5,0.3,0.2"],
    ] {
        let out = schurc(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(stdout(&out).contains("verdict    PASS"), "{args:?}");
    }
}

#[test]
fn oracle_check_seed_is_deterministic() {
    let args = [
        "oracle-check",
        "--n",
        "6",
        "--spectrum",
        "0.7,0.3",
        "--seed",
        "17",
        "--format",
        "csv",
    ];
    assert_eq!(schurc(&args).stdout, schurc(&args).stdout);
}

#[test]
fn oracle_check_size_cap() {
    let out = schurc(&["oracle-check", "--n", "12", "--spectrum", "0.75,0.25"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn config_file_supplies_flags() {
    let path = std::env::temp_dir().join(format!("schurc-cli-test-{}.conf", std::process::id()));
    std::fs::write(
        &path,
        "# plan defaults\nn=10\nspectrum=0.6,0.4\nzero-error=true\nformat=json\n",
    )
    .unwrap();
    let out = schurc(&["plan", "--config", path.to_str().unwrap(), "--n", "20"]);
    std::fs::remove_file(&path).unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["params"]["n"], 20);
    assert_eq!(v["results"]["d_enc"], 121);
}
