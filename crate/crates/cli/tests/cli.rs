use std::path::Path;
use std::process::{Command, Output};

use qent::ResultTable;
use tempfile::TempDir;

fn qent(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qent"));
    cmd.args(args).env_remove("QENT_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("qent binary runs")
}

fn write_config(dir: &Path, name: &str, json: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, json).unwrap();
    path.to_str().unwrap().to_string()
}

fn read_table(path: &Path) -> ResultTable {
    ResultTable::parse("t", &std::fs::read_to_string(path).unwrap()).unwrap()
}

const SMALL_SCAN: &str = r#"{
    "experiment": "distance_scan",
    "lattice": {"n_sites": 120},
    "distance_scan": {"block_len": 6, "r_min": 1, "r_max": 13, "r_step": 2}
}"#;

#[test]
fn version_prints_crate_version() {
    let out = qent(&["version"], &[]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn validate_accepts_good_config() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "scan.json", SMALL_SCAN);
    let out = qent(&["validate", "--config", &cfg], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn config_errors_exit_with_code_2() {
    let dir = TempDir::new().unwrap();
    let unknown = write_config(dir.path(), "a.json", r#"{"experiment": "block_scaling", "lattice": {"sites": 10}}"#);
    let foreign = write_config(
        dir.path(),
        "b.json",
        r#"{"experiment": "block_scaling", "distance_scan": {"block_len": 4}}"#,
    );
    let bad_range = write_config(
        dir.path(),
        "c.json",
        r#"{"experiment": "block_scaling", "lattice": {"n_sites": 20}, "block_scaling": {"l_min": 4, "l_max": 30}}"#,
    );
    for cfg in [&unknown, &foreign, &bad_range] {
        let out = qent(&["validate", "--config", cfg], &[]);
        assert_eq!(out.status.code(), Some(2), "{cfg}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let missing = dir.path().join("missing.json");
    let out = qent(&["run", "--config", missing.to_str().unwrap()], &[]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn degenerate_ground_state_exits_with_code_3() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        dir.path(),
        "ring.json",
        r#"{"experiment": "block_scaling", "lattice": {"n_sites": 40, "boundary": "periodic"},
            "block_scaling": {"l_min": 2, "l_max": 6}}"#,
    );
    let out_dir = dir.path().join("out");
    let out = qent(&["run", "--config", &cfg, "--out", out_dir.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn run_writes_tables_plots_and_timing() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "scan.json", SMALL_SCAN);
    let out_dir = dir.path().join("out");
    let out = qent(&["run", "--config", &cfg, "--out", out_dir.to_str().unwrap(), "--plots"], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let table = read_table(&out_dir.join("distance_scan.csv"));
    assert_eq!(table.get_meta("experiment"), Some("distance_scan"));
    let r = table.column("R").unwrap();
    assert_eq!(r, vec![1.0, 3.0, 5.0, 7.0, 9.0, 11.0, 13.0]);
    let info = table.column("I").unwrap();
    assert!(info.windows(2).all(|w| w[1] < w[0]));
    assert!(out_dir.join("distance_scan.svg").exists());

    let timing: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("distance_scan.timing.json")).unwrap()).unwrap();
    assert_eq!(timing["config_hash"].as_str(), table.get_meta("config_hash"));
}

#[test]
fn embedded_config_reproduces_output_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "scan.json", SMALL_SCAN);
    let first = dir.path().join("first");
    let out = qent(&["run", "--config", &cfg, "--out", first.to_str().unwrap()], &[("QENT_THREADS", "1")]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(first.join("distance_scan.csv")).unwrap();

    let embedded = ResultTable::parse("t", &text).unwrap().embedded_config().unwrap();
    let rerun_cfg = write_config(dir.path(), "rerun.json", &embedded.canonical_json());
    let second = dir.path().join("second");
    let out = qent(&["run", "--config", &rerun_cfg, "--out", second.to_str().unwrap(), "--threads", "3"], &[]);
    assert!(out.status.success());
    assert_eq!(text, std::fs::read_to_string(second.join("distance_scan.csv")).unwrap());
}

#[test]
fn wavepacket_drifts_toward_colder_region_of_scan_profile() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "scan.json", SMALL_SCAN);
    let scan_dir = dir.path().join("scan");
    assert!(qent(&["run", "--config", &cfg, "--out", scan_dir.to_str().unwrap()], &[]).status.success());

    let wave = write_config(
        dir.path(),
        "wave.json",
        r#"{"experiment": "wavepacket_demo",
            "wavepacket_demo": {"profile": {"kind": "distance_scan", "path": "scan/distance_scan.csv"},
                                "dt": 0.01, "n_steps": 200, "record_every": 20}}"#,
    );
    let out_dir = dir.path().join("wave");
    let out = qent(&["run", "--config", &wave, "--out", out_dir.to_str().unwrap()], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let traj = read_table(&out_dir.join("wavepacket_trajectory.csv"));
    let theta_bar = read_table(&scan_dir.join("distance_scan.csv")).column("Theta_bar").unwrap();
    let v = traj.column("v").unwrap();
    let ratio = traj.column("conserved_ratio").unwrap();
    let v_end = *v.last().unwrap();
    assert!(v_end != 0.0);
    assert_eq!(v_end < 0.0, theta_bar[6] > theta_bar[0]);
    assert!(ratio.iter().all(|r| (r - ratio[0]).abs() < 1e-9));
    assert!(out_dir.join("wavepacket_redshift.csv").exists());
}

#[test]
fn constant_profile_leaves_momentum_unchanged() {
    let dir = TempDir::new().unwrap();
    let wave = write_config(
        dir.path(),
        "wave.json",
        r#"{"experiment": "wavepacket_demo",
            "wavepacket_demo": {"profile": {"kind": "constant", "theta": 0.7}, "v0": 0.2, "n_steps": 100}}"#,
    );
    let out_dir = dir.path().join("wave");
    assert!(qent(&["run", "--config", &wave, "--out", out_dir.to_str().unwrap()], &[]).status.success());
    let traj = read_table(&out_dir.join("wavepacket_trajectory.csv"));
    let p = traj.column("P").unwrap();
    assert!(p.iter().all(|&x| x == p[0]));
    let change: f64 = traj.get_meta("momentum_change").unwrap().parse().unwrap();
    assert_eq!(change, 0.0);
}
