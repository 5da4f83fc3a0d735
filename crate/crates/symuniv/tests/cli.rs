//! End-to-end checks of the binary: exit codes, artifact contents, and
//! byte-level determinism of seeded reports.

use std::process::{Command, Output};

fn symuniv(cache: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symuniv"))
        .env("SYMUNIV_CACHE", cache)
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn unknown_subcommand_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = symuniv(dir.path(), &["badcmd"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = symuniv(dir.path(), &["coeffs", "--weight"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coeffs_writes_expected_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("tau.csv");
    let out = symuniv(
        dir.path(),
        &["coeffs", "--weight", "12", "--n", "1000", "--out", csv.to_str().unwrap()],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,c_exact,lambda_norm"));
    assert_eq!(lines.next(), Some("1,1,1.0000000000000000e0"));
    let row2 = lines.next().unwrap();
    assert!(row2.starts_with("2,-24,-5.303300858899"), "{row2}");
    assert_eq!(text.lines().count(), 1001);
}

#[test]
fn dirichlet_export_carries_a_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sym2.csv");
    let out = symuniv(
        dir.path(),
        &[
            "coeffs", "--weight", "12", "--n", "500", "--kind", "sym2", "--out",
            csv.to_str().unwrap(),
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,lambda_F\n1,1.0000000000000000e0"));
    let sidecar: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("sym2.csv.meta.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(sidecar["weight"], 12);
    assert_eq!(sidecar["variant"], "sym2");
    assert_eq!(sidecar["n"], 500);
}

#[test]
fn pnt_reports_ratios_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = symuniv(
        dir.path(),
        &["--json", "pnt", "--weight", "12", "--m", "1", "--x", "20000"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ratio = v["report"]["sums"]["theta_ratio"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() < 0.2, "theta ratio {ratio}");
    assert_eq!(v["provenance"]["tool"], "symuniv");
}

#[test]
fn out_of_region_exits_1_with_error_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = symuniv(
        dir.path(),
        &["lvalue", "--kind", "sym2", "--sigma", "0.5", "--t", "1.0"],
    );
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value =
        serde_json::from_slice(&out.stderr).expect("stderr is machine-readable");
    assert_eq!(err["error"]["kind"], "out-of-region");
}

#[test]
fn unsupported_weight_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = symuniv(
        dir.path(),
        &["coeffs", "--weight", "14", "--n", "10", "--out", "/tmp/unused.csv"],
    );
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "unsupported-weight");
}

#[test]
fn seeded_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--json",
        "random-model",
        "--kind",
        "sym2",
        "--sigma",
        "0.8",
        "--t-span",
        "50",
        "--n-shift",
        "120",
        "--n-model",
        "120",
        "--seed",
        "9",
        "--p-max",
        "2000",
    ];
    let first = symuniv(dir.path(), &args);
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let second = symuniv(dir.path(), &args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn universality_scan_runs_with_constant_target() {
    let dir = tempfile::tempdir().unwrap();
    let out = symuniv(
        dir.path(),
        &[
            "--json",
            "universality",
            "--kind",
            "sym2",
            "--target",
            "const:1.0",
            "--T",
            "2",
            "--dt",
            "0.5",
            "--eps",
            "1000",
        ],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["good_set_measure"], 1.0);
    assert_eq!(v["report"]["n_grid"], 5);
}

#[test]
fn verify_rejects_unknown_level() {
    let dir = tempfile::tempdir().unwrap();
    let out = symuniv(dir.path(), &["verify", "--level", "medium"]);
    assert_eq!(out.status.code(), Some(1));
}
