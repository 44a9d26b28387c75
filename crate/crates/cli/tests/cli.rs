use std::path::Path;
use std::process::{Command, Output};
use tempfile::TempDir;

const DEVICE: &str = "[circuit]\ne_sigma_ghz = 40.0\ne_c = 0.1\neta = 0.5\n";

fn run(dir: &Path, command: &str, config: &str, extra: &[&str]) -> Output {
    let cfg = dir.join(format!("{command}.toml"));
    std::fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_holoq"))
        .arg(command)
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .args(extra)
        .output()
        .unwrap()
}

fn read(dir: &Path, file: &str) -> String {
    std::fs::read_to_string(dir.join("out").join(file)).unwrap()
}

fn metadata(dir: &Path) -> serde_json::Value {
    serde_json::from_str(&read(dir, "metadata.json")).unwrap()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().to_string()).collect()
}

#[test]
fn curvature_map_is_deterministic_and_peaks_at_the_unprotected_point() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!(
        "{DEVICE}[basis]\nn_max = 30\n[curvature_map]\nphi = [0.0, 3.141592653589793]\nq = [-1.0, 1.0]\nn_phi = 41\nn_q = 20\n"
    );
    let out = run(tmp.path(), "curvature-map", &cfg, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let first = read(tmp.path(), "curvature.csv");
    assert!(first.starts_with("phi,q,omega_even,omega_odd,omega_diff,valid\n"));
    assert!(!first.contains('\r'));
    assert_eq!(first.lines().count(), 1 + 41 * 20);
    let meta = metadata(tmp.path());
    let peak = &meta["results"]["peak"];
    assert!((peak["phi"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 0.08);
    assert!(peak["q"].as_f64().unwrap().abs() < 0.1);
    assert_eq!(meta["command"], "curvature-map");
    assert!(meta["config_toml"].as_str().unwrap().contains("n_phi = 41"));

    let again = run(tmp.path(), "curvature-map", &cfg, &[]);
    assert!(again.status.success());
    assert_eq!(first, read(tmp.path(), "curvature.csv"));
}

#[test]
fn empty_grid_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!("{DEVICE}[curvature_map]\nphi = [0.0, 1.0]\nq = [0.0, 1.0]\nn_phi = 0\nn_q = 4\n");
    let out = run(tmp.path(), "curvature-map", &cfg, &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_key_reports_its_line() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!("{DEVICE}[curvature_map]\npreset = \"zoom\"\nn_phii = 3\n");
    let out = run(tmp.path(), "curvature-map", &cfg, &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("n_phii") && err.contains("line 7"), "{err}");
}

#[test]
fn inconsistent_circuit_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let cfg = "[circuit]\ne_sigma_ghz = 40.0\ne_c = 0.1\neta = 0.1\nec_ghz = 2.0\n[dynamics]\nmode = \"discrete_z\"\n";
    assert_eq!(run(tmp.path(), "dynamics", cfg, &[]).status.code(), Some(2));
    let tmp = TempDir::new().unwrap();
    assert_eq!(run(tmp.path(), "dynamics", DEVICE, &[]).status.code(), Some(2));
}

#[test]
fn gate_angle_rows_and_fit() {
    let tmp = TempDir::new().unwrap();
    let cfg =
        format!("{DEVICE}[basis]\nn_max = 40\n[gate_angle]\neta = [0.05, 0.1, 2.0]\ndphi = 0.0314159\ndq = 0.05\n");
    let out = run(tmp.path(), "gate-angle", &cfg, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = read(tmp.path(), "gate_angle.csv");
    let thetas: Vec<f64> = column(&csv, "theta").iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(thetas.len(), 3);
    assert!(thetas[2].abs() < 0.35);
    let a = metadata(tmp.path())["results"]["fit"]["a"].as_f64().unwrap();
    assert!((a - 2.97).abs() < 0.1, "{a}");
}

#[test]
fn single_point_sweep_has_no_fit() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!("{DEVICE}[basis]\nn_max = 40\n[gate_angle]\neta = [0.1]\ndphi = 0.0314159\ndq = 0.05\n");
    let out = run(tmp.path(), "gate-angle", &cfg, &[]);
    assert!(out.status.success());
    assert_eq!(read(tmp.path(), "gate_angle.csv").lines().count(), 2);
    assert!(metadata(tmp.path())["results"]["fit"].is_null());
}

#[test]
fn failed_rows_are_written_and_exit_three() {
    let tmp = TempDir::new().unwrap();
    let cfg = format!("{DEVICE}[dynamics]\nmode = \"holonomic\"\ntau_ns = [2.0]\ndt_ns = 0.5\n");
    let out = run(tmp.path(), "dynamics", &cfg, &[]);
    assert_eq!(out.status.code(), Some(3));
    let csv = read(tmp.path(), "holonomic.csv");
    assert!(column(&csv, "status")[0].starts_with("failed"));
    assert!(metadata(tmp.path())["status"].as_str().unwrap().starts_with("partial"));
}

#[test]
fn discrete_z_in_json() {
    let tmp = TempDir::new().unwrap();
    let cfg = "[circuit]\ne_sigma_ghz = 40.0\ne_c = 0.1\neta = 0.0\n[dynamics]\nmode = \"discrete_z\"\n[output]\nformat = \"json\"\n";
    let out = run(tmp.path(), "dynamics", cfg, &[]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&read(tmp.path(), "discrete_z.json")).unwrap();
    let rel = rows[0]["relative_phase"].as_f64().unwrap();
    assert!((rel + std::f64::consts::FRAC_PI_2).abs() < 1e-8);
}

#[test]
fn monte_carlo_reruns_are_identical() {
    let cfg = format!(
        "{DEVICE}[noise]\nmode = \"monte_carlo\"\ntau_gate_ns = 5.0\nsqrt_a = 6.5e-4\nn_samples = 2\nseed = 9\n"
    );
    let tmp = TempDir::new().unwrap();
    assert!(run(tmp.path(), "noise", &cfg, &[]).status.success());
    let a = read(tmp.path(), "monte_carlo.csv");
    assert!(run(tmp.path(), "noise", &cfg, &["--threads", "1"]).status.success());
    assert_eq!(a, read(tmp.path(), "monte_carlo.csv"));
    assert_eq!(metadata(tmp.path())["seed"], 9);

    assert!(run(tmp.path(), "noise", &cfg, &["--seed", "10"]).status.success());
    assert_ne!(a, read(tmp.path(), "monte_carlo.csv"));
    assert_eq!(metadata(tmp.path())["seed"], 10);
}

#[test]
fn static_offset_reports_exponent() {
    let tmp = TempDir::new().unwrap();
    let cfg = "[circuit]\ne_sigma_ghz = 40.0\ne_c = 0.1\neta = 0.1\n[basis]\nn_max = 40\n\
               [noise]\nmode = \"static_offset\"\neps_q = [1e-3, 1e-2, 3e-2]\n";
    let out = run(tmp.path(), "noise", cfg, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let k = metadata(tmp.path())["results"]["exponent_delta_theta_vs_eps"].as_f64().unwrap();
    assert!((k - 2.0).abs() < 0.1, "{k}");
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let (cfg, raw) = holoq_cli::config::load(&path).unwrap_or_else(|e| panic!("{e}"));
        assert_eq!(raw, text);
        cfg.circuit.params().unwrap();
        n += 1;
    }
    assert!(n >= 8);
}
