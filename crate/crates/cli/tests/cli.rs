//! End-to-end behaviour of the `qnet` binary.

use std::process::{Command, Output};

fn qnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qnet"))
        .args(args)
        .output()
        .expect("run qnet")
}

fn temp_path(tag: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("qnet-cli-{}-{tag}", std::process::id()))
}

#[test]
fn data_on_stdout_nothing_on_stderr() {
    let out = qnet(&["spectrum", "--N", "4", "--phi", "1.0"]);
    assert!(out.status.success());
    assert!(out.stderr.is_empty());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,re_gamma,im_gamma,abs_exp_gamma"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn invariant_violation_fails_with_message() {
    let out = qnet(&["spectrum", "--N", "1", "--phi", "1.0"]);
    assert!(!out.status.success());
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("N must be at least 2"));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let out = qnet(&["sweep", "--gamma", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn numerical_errors_exit_nonzero() {
    // Classification is undefined off the Ising line.
    let out = qnet(&["regime", "--phi", "1.0", "--theta", "0.3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn output_file_receives_data() {
    let path = temp_path("critical.json");
    let out = qnet(&[
        "critical",
        "--regime",
        "su2",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["records"][0]["transmittance_c"], 0.5);
    assert_eq!(v["records"][0]["phi_c"], std::f64::consts::FRAC_PI_4);
}

#[test]
fn flags_override_config_file() {
    let path = temp_path("config.json");
    std::fs::write(&path, r#"{"N": 6, "M": 2, "phi": 0.7, "format": "json"}"#).unwrap();
    let cfg = path.to_str().unwrap();
    let from_file = qnet(&["propagate", "--config", cfg]);
    let overridden = qnet(&["propagate", "--config", cfg, "--N", "3", "--format", "csv"]);
    std::fs::remove_file(&path).unwrap();

    let v: serde_json::Value = serde_json::from_slice(&from_file.stdout).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 12);
    let text = String::from_utf8(overridden.stdout).unwrap();
    assert!(text.starts_with("index,re_amp,im_amp,intensity\n"));
    assert_eq!(text.lines().count(), 1 + 6);
}

#[test]
fn sweep_summary_line() {
    let out = qnet(&["sweep", "--steps", "50"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let last = text.lines().last().unwrap();
    assert!(last.starts_with("# kink phi="), "{last}");
}
