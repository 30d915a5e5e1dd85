use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn plate_flow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plate-flow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

fn stderr_record(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.trim()).unwrap_or_else(|e| panic!("{e}: {text}"))
}

#[test]
fn temperature_profile_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(
        &cfg,
        "field = \"temperature\"\n[grid]\ny_min = 0.0\ny_max = 4.0\nsamples = 81\n",
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = plate_flow(&[
        "profile",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(out_dir.join("profile.csv")).unwrap();
    let lines = data_lines(&text);
    assert_eq!(lines[0], "Y,T[t=0.2]");
    assert_eq!(lines.len(), 82);
    let first: Vec<f64> = lines[1].split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(first, vec![0.0, 1.0]);
    assert!(text.contains("# pr = 7.0999999999999996e-1\n"));
    assert!(!text.contains('\r'));
}

fn run_figures(dir: &Path) -> Output {
    plate_flow(&["figures", "--out", dir.to_str().unwrap()])
}

#[test]
fn figures_writes_eight_datasets_and_passes_trends() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_figures(dir.path());
    assert!(out.status.success());
    for k in 1..=8 {
        assert!(dir.path().join(format!("fig{k}.csv")).is_file());
    }
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(stdout.matches("PASS trend").count(), 8);
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn sweep_in_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = plate_flow(&[
        "sweep",
        "--format",
        "json",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("sweep.json")).unwrap()).unwrap();
    assert_eq!(doc["columns"][0], "Y");
    assert_eq!(doc["columns"].as_array().unwrap().len(), 4);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 161);
    assert_eq!(doc["provenance"]["sweep_parameter"], "alpha_deg");
    // V(0, t) = t^2 at the wall for every angle.
    let wall = doc["rows"][0].as_array().unwrap();
    for v in &wall[1..] {
        assert!((v.as_f64().unwrap() - 0.04).abs() < 1e-12);
    }
}

#[test]
fn verify_passes_on_a_fine_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = plate_flow(&[
        "verify",
        "--dy",
        "0.02",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let text = fs::read_to_string(dir.path().join("verify.csv")).unwrap();
    assert_eq!(data_lines(&text).len(), 4);
}

#[test]
fn verify_fails_on_a_coarse_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = plate_flow(&[
        "verify",
        "--dy",
        "0.5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stderr_record(&out)["error"]["kind"], "verification_failed");
}

#[test]
fn singular_prandtl_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = plate_flow(&[
        "profile",
        "--pr",
        "1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let record = stderr_record(&out);
    assert_eq!(record["error"]["kind"], "config");
    assert!(record["error"]["message"]
        .as_str()
        .unwrap()
        .contains("finite-difference"));
}

#[test]
fn out_of_range_angle_names_its_key() {
    let dir = tempfile::tempdir().unwrap();
    let out = plate_flow(&[
        "profile",
        "--alpha-deg",
        "90",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_record(&out)["error"]["key"], "params.alpha_deg");
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "[params]\nreynolds = 3.0\n").unwrap();
    let out = plate_flow(&["profile", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_record(&out)["error"]["kind"], "config");
}

#[test]
fn missing_config_file_is_an_io_error() {
    let out = plate_flow(&["profile", "--config", "/nonexistent/run.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_record(&out)["error"]["kind"], "io");
}
