use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn problem(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("problems")
        .join(name)
}

fn exh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exh"))
        .args(args)
        .env_remove("EXH_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn eval_unconstrained_example() {
    let file = problem("unconstrained.json");
    for (g, expect) in [
        ("1,0", "0.000000000000"),
        ("0,0", "0.000000000000"),
        ("0,1", "-1.000000000000"),
    ] {
        let out = exh(&["eval", path(&file), "--direction", g]);
        assert!(out.status.success());
        assert_eq!(stdout(&out).trim(), expect);
    }
    let out = exh(&["eval", path(&file), "--direction", "-3,4"]);
    assert_eq!(stdout(&out).trim(), "-2.000000000000");
}

#[test]
fn eval_exit_codes() {
    let file = problem("unconstrained.json");
    assert_eq!(
        exh(&["eval", path(&file), "--direction", "1,0,0"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        exh(&["eval", path(&file), "--direction", "1,a"])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"dimension": 2, "exhauster": {"kind": "lower", "members": []}, "extra": 1}"#,
    );
    let out = exh(&["eval", path(&bad), "--direction", "1,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let short = write(
        dir.path(),
        "short.json",
        r#"{"dimension": 2, "exhauster": {"kind": "lower", "members": [{"ball": {"center": [1], "radius": 1}}]}}"#,
    );
    assert_eq!(
        exh(&["eval", path(&short), "--direction", "1,0"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn compare_reports_the_shift_witness() {
    let file = problem("constrained.json");
    let out = exh(&["compare", path(&file), "1", "0", "--relation", "m1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["holds"], true);
    let w: Vec<f64> = serde_json::from_value(v["witness"].clone()).unwrap();
    assert!((w[0] + 1.0).abs() <= 1e-9 && w[1].abs() <= 1e-9);
    let v = json(&exh(&["compare", path(&file), "0", "1"]));
    assert_eq!(v["holds"], false);
    assert!(v["witness"].is_null());
    assert_eq!(
        exh(&["compare", path(&file), "0", "5"]).status.code(),
        Some(6)
    );
}

#[test]
fn reduce_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (name, method, kept) in [
        ("constrained.json", "pairwise", 1),
        ("constrained.json", "auto", 1),
        ("unconstrained.json", "cover", 2),
        ("unconstrained.json", "auto", 2),
        ("singleton.json", "auto", 1),
    ] {
        let original = problem(name);
        let reduced = dir.path().join(format!("{method}-{name}"));
        let out = exh(&[
            "reduce",
            path(&original),
            "--method",
            method,
            "-o",
            path(&reduced),
        ]);
        assert!(
            out.status.success(),
            "{name} {method}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let report = json(&out);
        assert_eq!(report["members_after"], kept);
        let text = std::fs::read_to_string(&reduced).unwrap();
        let file: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(file["exhauster"]["members"].as_array().unwrap().len(), kept);
        let out = exh(&[
            "verify",
            path(&original),
            path(&reduced),
            "--samples",
            "2000",
            "--seed",
            "3",
        ]);
        assert!(out.status.success(), "{name} {method}: {}", stdout(&out));
        assert_eq!(json(&out)["pass"], true);
    }
}

#[test]
fn constrained_reduction_keeps_b() {
    let dir = tempfile::tempdir().unwrap();
    let reduced = dir.path().join("r.json");
    let out = exh(&[
        "reduce",
        path(&problem("constrained.json")),
        "--method",
        "pairwise",
        "-o",
        path(&reduced),
    ]);
    let report = json(&out);
    assert_eq!(report["removed"][0]["rule"], "pairwise-m1");
    assert_eq!(report["survivors"], serde_json::json!([1]));
    let file: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&reduced).unwrap()).unwrap();
    assert_eq!(
        file["exhauster"]["members"],
        serde_json::json!([{"ball": {"center": [1.0, 0.0], "radius": 1.0}}])
    );
}

#[test]
fn singleton_reduction_removes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let reduced = dir.path().join("r.json");
    let out = exh(&[
        "reduce",
        path(&problem("singleton.json")),
        "--method",
        "pairwise",
        "-o",
        path(&reduced),
    ]);
    assert_eq!(json(&out)["removed"], serde_json::json!([]));
}

#[test]
fn cover_needs_the_whole_space() {
    let dir = tempfile::tempdir().unwrap();
    let out = exh(&[
        "reduce",
        path(&problem("constrained.json")),
        "--method",
        "cover",
        "-o",
        path(&dir.path().join("x.json")),
    ]);
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn unsupported_pairs_exit_five() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "mixed.json",
        r#"{"dimension": 2, "exhauster": {"kind": "lower", "members": [
            {"ball": {"center": [0, 0], "radius": 3}},
            {"vpolytope": {"vertices": [[0, 0], [1, 0], [0, 1]]}}
        ]}}"#,
    );
    let out = exh(&["compare", path(&file), "1", "0"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("members 1 and 0"));
}

#[test]
fn verify_detects_a_wrong_reduction() {
    let dir = tempfile::tempdir().unwrap();
    let wrong = write(
        dir.path(),
        "wrong.json",
        r#"{"dimension": 2, "exhauster": {"kind": "lower", "members": [{"ball": {"center": [-1, 0], "radius": 1}}]}}"#,
    );
    let out = exh(&[
        "verify",
        path(&problem("unconstrained.json")),
        path(&wrong),
        "--samples",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
    let other = exh(&[
        "verify",
        path(&problem("unconstrained.json")),
        path(&problem("constrained.json")),
    ]);
    assert_eq!(other.status.code(), Some(6));
}

#[test]
fn optimality_report() {
    let out = exh(&["optimality", path(&problem("optimality.json"))]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["cond_iv"], true);
    assert_eq!(v["consistent"], true);
    assert_eq!(v["per_pair"][0]["witness"], serde_json::json!([0.0, 0.0]));
    assert_eq!(
        exh(&["optimality", path(&problem("unconstrained.json"))])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn export_grid() {
    let out = exh(&[
        "export",
        path(&problem("unconstrained.json")),
        "--grid",
        "8",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "g1,g2,h");
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[1], "1.000000000000,0.000000000000,0.000000000000");
    for line in &lines[1..] {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let direct = stdout(&exh(&[
            "eval",
            path(&problem("unconstrained.json")),
            "--direction",
            &format!("{},{}", v[0], v[1]),
        ]));
        assert!((direct.trim().parse::<f64>().unwrap() - v[2]).abs() < 1e-11);
    }
    // Only directions inside T are exported.
    let out = exh(&["export", path(&problem("constrained.json")), "--grid", "8"]);
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn export_of_a_zero_domain_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "zero.json",
        r#"{"dimension": 2, "exhauster": {"kind": "lower", "members": [{"ball": {"center": [0, 0], "radius": 1}}]},
            "cone_T": {"halfspaces": [[1, 0], [-1, 0], [0, 1], [0, -1]]}}"#,
    );
    let out = exh(&["export", path(&file), "--grid", "8"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "g1,g2,h\n");
}

#[test]
fn tolerance_override() {
    let file = problem("unconstrained.json");
    let run = |value: &str| {
        Command::new(env!("CARGO_BIN_EXE_exh"))
            .args(["eval", path(&file), "--direction", "1,0"])
            .env("EXH_TOLERANCE", value)
            .output()
            .unwrap()
    };
    assert!(run("1e-7").status.success());
    assert_eq!(run("abc").status.code(), Some(2));
    assert_eq!(run("-1").status.code(), Some(2));
}
