use std::path::PathBuf;
use std::process::{Command, Output};

fn qsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsum")).args(args).output().expect("spawn qsum")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn golden() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden/report.json")
}

#[test]
fn verify_warnaar_json() {
    let o = qsum(&["verify", "--suite", "warnaar", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["format_version"], 1);
    let records = report["suites"][0]["records"].as_array().unwrap();
    assert_eq!(records.len(), 3);
    assert!(records.iter().all(|r| r["verdict"] == "pass"));
}

#[test]
fn verify_is_byte_deterministic() {
    let args = ["verify", "--suite", "theorem3-paper,kim", "--n-max", "3", "--k-max", "2"];
    let (a, b) = (qsum(&args), qsum(&args));
    assert_eq!(a.stdout, b.stdout);
    assert!(a.stdout.ends_with(b"\n"));
}

#[test]
fn verify_markdown_to_file() {
    let out = scratch("warnaar.md");
    let o = qsum(&["verify", "--suite", "warnaar", "--n-max", "2", "--format", "md", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let md = std::fs::read_to_string(out).unwrap();
    assert!(md.contains("## warnaar"));
    assert!(md.contains("| n=1 |"));
}

#[test]
fn golden_match_and_mismatch() {
    let symbolic = "warnaar,garrett-hummel,schlosser,kim,faulhaber,index-bridge,classical-limits,theorem3-paper,theorem3-reference,reference-difference";
    let g = golden();
    let full: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();

    // restrict the committed golden file to the symbolic suites
    let mut trimmed = full.clone();
    trimmed["suites"] = serde_json::Value::Array(
        full["suites"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|s| symbolic.split(',').any(|n| s["name"] == n))
            .cloned()
            .collect(),
    );
    let path = scratch("golden-symbolic.json");
    std::fs::write(&path, serde_json::to_string_pretty(&trimmed).unwrap()).unwrap();
    let o = qsum(&["verify", "--suite", symbolic, "--golden", path.to_str().unwrap(), "--out", scratch("cur.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let rec = trimmed["suites"][7]["records"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|r| r["params"]["formula"] == "theorem3" && r["params"]["n"] == "1" && r["params"]["k"] == "1" && r["params"]["sign"] == "1")
        .unwrap();
    assert_eq!(rec["verdict"], "fail");
    rec["verdict"] = "pass".into();
    std::fs::write(&path, serde_json::to_string_pretty(&trimmed).unwrap()).unwrap();
    let o = qsum(&["verify", "--suite", symbolic, "--golden", path.to_str().unwrap(), "--out", scratch("cur.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("theorem3-paper[formula=theorem3,k=1,n=1,sign=1] verdict: pass -> fail"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--q", "2.25"],
        vec!["verify", "--q", "2"],
        vec!["verify", "--n-max", "1000"],
        vec!["eval", "beta-star", "--n", "0", "--k", "1"],
        vec!["eval", "zeta", "--s", "2", "--k", "1", "--q", "2"],
        vec!["eval", "zeta", "--s", "3", "--k", "1", "--q", "1/2"],
        vec!["limit", "--op", "bogus"],
        vec!["limit", "--op", "schlosser-sum", "--params", "m=2"],
    ] {
        assert_eq!(qsum(&args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(
        qsum(&["verify", "--suite", "warnaar", "--out", "/nonexistent/dir/x.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn eval_beta_star() {
    let o = qsum(&["eval", "beta-star", "--n", "1", "--k", "1", "--source", "paper"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("status: regularized"));
    assert!(s.contains("value: (v^2) / (v^4 - 2*v^2 + 1)"));

    let o = qsum(&["eval", "beta-star", "--n", "2", "--k", "2", "--polynomial", "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status: regular\n"));
}

#[test]
fn eval_sum_and_zeta() {
    let o = qsum(&["eval", "sum", "--m", "1", "--n", "2"]);
    // [1]_{q^2} q + [2]_{q^2} = 1 + q + q^2
    assert_eq!(stdout(&o).trim(), "(v^4 + v^2 + 1)");

    let o = qsum(&["eval", "zeta", "--s", "3", "--k", "1", "--q", "2", "--precision", "128"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    let value: f64 = line.trim().strip_prefix("series: ").unwrap().parse().unwrap();
    // f64 partial sums of the same series
    let q = 2f64;
    let int = |n: f64, b: f64| (b.powf(n) - 1.0) / (b - 1.0);
    let oracle: f64 = (1..200).map(|n| {
        let n = n as f64;
        int(n, q * q) * q.powf((1.0 - n) * (2.0 - 3.0) / 2.0) / int(n, q).powi(3)
    }).sum();
    assert!((value / oracle - 1.0).abs() < 1e-12, "{value} vs {oracle}");
}

#[test]
fn limit_ops() {
    let o = qsum(&["limit", "--op", "schlosser-sum", "--params", "m=2", "n=3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("limit: 14\nclassical: 14\nmatch: true"));

    let o = qsum(&["limit", "--op", "thm3-lhs", "--params", "n=3", "k=4"]);
    assert!(stdout(&o).contains("limit: 36\n"));

    let o = qsum(&["limit", "--op", "q-binomial", "--params", "n=6", "k=3"]);
    assert!(stdout(&o).contains("limit: 20\n"));

    // beta* has a pole at q = 1
    let o = qsum(&["limit", "--op", "beta-star", "--params", "n=1", "k=1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("limit: pole at v = 1"));
}
