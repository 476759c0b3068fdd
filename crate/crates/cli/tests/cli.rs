//! End-to-end tests of the binary: exit-code contract, file round-trips, and
//! byte-level reproducibility modulo the timing field.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_sumnorms")
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

fn repo_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn strip_wall_time(text: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(text).expect("valid report JSON");
    v.as_object_mut().unwrap().remove("wall_time_ms");
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn sample_file_strong_norm_matches_note() {
    let sample = repo_file("docs/examples/sample_family.json");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let output = run(&[
        "norm",
        sample.to_str().unwrap(),
        "--kind",
        "strong",
        "--p",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let value = report["items"][0]["estimate"]["value"].as_f64().unwrap();
    assert!((value - 5.0).abs() < 1e-12, "value {value}");
}

#[test]
fn unknown_norm_kind_exits_2() {
    let sample = repo_file("docs/examples/sample_family.json");
    let output = run(&["norm", sample.to_str().unwrap(), "--kind", "frobnitz"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn missing_file_exits_2() {
    let output = run(&["norm", "/nonexistent/instance.json", "--kind", "strong", "--p", "2"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("cannot read"), "stderr: {stderr}");
}

#[test]
fn malformed_file_exits_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"version\": \"1\", \"seed\": }").unwrap();
    let output = run(&["norm", bad.to_str().unwrap(), "--kind", "strong", "--p", "2"]);
    assert_eq!(output.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&output.stderr);
    // serde_json anchors the message to line and column.
    assert!(stderr.contains("line"), "stderr: {stderr}");
}

#[test]
fn inadmissible_exponents_exit_3_citing_constraint() {
    let dir = tempfile::tempdir().unwrap();
    let gen_out = dir.path().join("inst.json");
    let status = run(&[
        "gen",
        "gaussian-tensor",
        "--n",
        "2",
        "--N",
        "3",
        "--seed",
        "5",
        "--out",
        gen_out.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    // Inject inadmissible multiple_r params: 1/p > 1/q_i + 1/r.
    let mut inst: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&gen_out).unwrap()).unwrap();
    inst["params"] = serde_json::json!({
        "kind": "multiple_r",
        "p": 1.0,
        "q_list": [4.0, 4.0],
        "r": 4.0,
    });
    std::fs::write(&gen_out, serde_json::to_string(&inst).unwrap()).unwrap();
    let output = run(&["norm", gen_out.to_str().unwrap(), "--kind", "summing"]);
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("1/p > 1/q_i + 1/r"), "stderr: {stderr}");
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let output = run(&[
            "gen",
            "sign-tensor",
            "--n",
            "2",
            "--N",
            "4",
            "--seed",
            "9",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(output.status.code(), Some(0));
    }
    let ta = std::fs::read_to_string(&a).unwrap();
    let tb = std::fs::read_to_string(&b).unwrap();
    assert_eq!(ta, tb);
    // Every entry is ±1 and the file loads back through the norm command.
    let v: serde_json::Value = serde_json::from_str(&ta).unwrap();
    let coeffs = v["tensors"][0]["coeffs"].as_array().unwrap();
    assert_eq!(coeffs.len(), 16);
    assert!(coeffs
        .iter()
        .all(|c| { c.as_f64().map(|x| x.abs() == 1.0).unwrap_or(false) }));
    let output = run(&["norm", a.to_str().unwrap(), "--kind", "op"]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn fourier_tensor_rows_have_expected_l2_norm() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("f.json");
    let output = run(&[
        "gen",
        "fourier-tensor",
        "--n",
        "2",
        "--N",
        "4",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let coeffs = v["tensors"][0]["coeffs"].as_array().unwrap();
    for row in 0..4 {
        let norm: f64 = (0..4)
            .map(|col| coeffs[row * 4 + col].as_f64().unwrap().powi(2))
            .sum::<f64>()
            .sqrt();
        assert!((norm - 2.0).abs() < 1e-12, "row {row}: {norm}");
    }
}

#[test]
fn verify_endpoints_passes_and_reports_are_reproducible() {
    // The same command run twice must produce byte-identical reports modulo
    // the timing field; write to one path and read between runs.
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut texts = Vec::new();
    for _ in 0..2 {
        let output = run(&[
            "verify",
            "endpoints",
            "--count",
            "6",
            "--seed",
            "11",
            "--N",
            "3",
            "--m",
            "3",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(output.status.code(), Some(0));
        texts.push(strip_wall_time(&std::fs::read_to_string(&out).unwrap()));
    }
    assert_eq!(texts[0], texts[1]);
}

#[test]
fn verify_unknown_law_exits_2() {
    let output = run(&["verify", "nonsense-law"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn verify_littlewood_batch_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lw.json");
    let output = run(&[
        "verify",
        "littlewood43",
        "--N",
        "4",
        "--count",
        "200",
        "--seed",
        "7",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let items = v["items"].as_array().unwrap();
    assert!(items.len() >= 200);
    assert!(items.iter().all(|i| i["verdict"] == "pass"));
}

#[test]
fn verify_triviality_with_flags_reports_exponent() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t.json");
    let output = run(&[
        "verify",
        "triviality",
        "--p",
        "1",
        "--q",
        "4",
        "--r",
        "4",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(output.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let details = &v["items"][0]["details"];
    // 1/p − 1/q − 1/r = 1 − 1/4 − 1/4 = 1/2.
    let predicted = details["predicted_exponent"].as_f64().unwrap();
    assert!((predicted - 0.5).abs() < 1e-12);
    let measured = details["measured_exponent"].as_f64().unwrap();
    assert!((measured - 0.5).abs() < 0.01);
}
