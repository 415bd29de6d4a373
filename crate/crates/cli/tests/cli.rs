use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ncho(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncho"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

/// Header and numeric rows of a dataset, skipping `#` comment lines.
fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .unwrap();
    let headers = reader.headers().unwrap().iter().map(String::from).collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (headers, rows)
}

fn column(headers: &[String], rows: &[Vec<f64>], name: &str) -> Vec<f64> {
    let i = headers
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i]).collect()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn solve_reports_demo_frequencies() {
    let out = ncho(&["solve", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let fr = &v["frequencies"];
    assert!((fr["gamma"].as_f64().unwrap() - 0.1).abs() < 1e-15);
    assert!((fr["carrier"].as_f64().unwrap() - 1.0).abs() < 1e-14);
    for r in v["residuals"].as_array().unwrap() {
        assert!(r["norm"].as_f64().unwrap() < 1e-12);
    }
}

#[test]
fn solve_commutative_limit() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"params": {"m": 2.0, "omega": 1.5, "hbar": 1.0, "theta": 0.0, "eta": 0.0}}"#,
    );
    let out = ncho(&["solve", "--config", &cfg, "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["frequencies"]["gamma"].as_f64().unwrap(), 0.0);
    assert!((v["frequencies"]["carrier"].as_f64().unwrap() - 1.5).abs() < 1e-15);
}

#[test]
fn degenerate_deformation_exits_with_validation_code() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"params": {"m": 1.0, "omega": 1.0, "hbar": 1.0, "theta": 1.0, "eta": 1.0}}"#,
    );
    let out = ncho(&["solve", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("DegenerateDeformation"));
}

#[test]
fn usage_and_unknown_figure_exit_two() {
    assert_eq!(ncho(&[]).status.code(), Some(2));
    assert_eq!(
        ncho(&["solve", "--gauge-ratio", "abc"]).status.code(),
        Some(2)
    );
    let out = ncho(&["figure", "fig7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("UnknownFigure"));
    assert_eq!(
        ncho(&["solve", "--gauge-ratio", "-1"]).status.code(),
        Some(2)
    );
}

#[test]
fn io_failures_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = ncho(&["trajectory", "--out", path_arg(&blocker.join("sub"))]);
    assert_eq!(out.status.code(), Some(3));
    let missing = dir.path().join("missing.json");
    assert_eq!(
        ncho(&["solve", "--config", path_arg(&missing)])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn trajectory_invariants_and_initial_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"params": {"m": 1.3, "omega": 0.8, "hbar": 1.1, "theta": 0.2, "eta": -0.4},
            "ics": {"explicit": {"x": 0.3, "y": -0.5, "pix": 0.9, "piy": 0.1}},
            "time_grid": {"t_start": 0.0, "t_end": 200.0, "samples": 801}}"#,
    );
    let out = ncho(&[
        "trajectory",
        "--config",
        &cfg,
        "--out",
        path_arg(dir.path()),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (h, rows) = read_csv(&dir.path().join("trajectory.csv"));
    assert_eq!(&rows[0][..5], &[0.0, 0.3, -0.5, 0.9, 0.1]);
    for name in ["I1", "I2"] {
        let c = column(&h, &rows, name);
        assert!(c.iter().all(|v| (v - c[0]).abs() < 1e-10), "{name} drifts");
    }
    assert!(dir.path().join("trajectory.meta.json").exists());
}

#[test]
fn trajectory_oracle_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = ncho(&["trajectory", "--oracle", "--out", path_arg(dir.path())]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("max deviation"));
    let meta = read_json(&dir.path().join("trajectory.meta.json"));
    let dev = meta["extra"]["oracle"]["max_deviation"].as_f64().unwrap();
    assert!(dev < 1e-8, "{dev}");
    let (h, rows) = read_csv(&dir.path().join("trajectory.csv"));
    assert!(column(&h, &rows, "deviation").iter().all(|d| *d <= dev));
}

#[test]
fn datasets_are_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        assert!(
            ncho(&["trajectory", "--oracle", "--out", path_arg(dir.path())])
                .status
                .success()
        );
        assert!(ncho(&["figure", "fig2", "--out", path_arg(dir.path())])
            .status
            .success());
    }
    for name in ["trajectory.csv", "fig2_envelope.csv", "fig2_zoom.csv"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert!(x == y, "{name} differs");
    }
}

#[test]
fn every_dataset_has_a_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    for fig in ["fig1", "fig2", "fig3"] {
        assert!(ncho(&["figure", fig, "--out", path_arg(dir.path())])
            .status
            .success());
        for window in ["envelope", "zoom"] {
            let meta = read_json(&dir.path().join(format!("{fig}_{window}.meta.json")));
            assert_eq!(meta["dataset"], format!("{fig}_{window}"));
            assert!(meta["timestamp_unix"].as_u64().unwrap() > 0);
            let ratio = meta["frequencies"]["gamma_over_omega"].as_f64().unwrap();
            assert!((ratio - 0.002).abs() < 1e-15);
            assert!(meta["config"]["params"].is_object());
        }
    }
}

#[test]
fn fig1_envelope_extrema() {
    let dir = tempfile::tempdir().unwrap();
    assert!(ncho(&["figure", "fig1", "--out", path_arg(dir.path())])
        .status
        .success());
    let (h, rows) = read_csv(&dir.path().join("fig1_envelope.csv"));
    let wt = column(&h, &rows, "Omega_t");
    let xi1 = column(&h, &rows, "xi1");
    let xi2 = column(&h, &rows, "xi2");
    let at = |target: f64| wt.iter().position(|&x| x >= target).unwrap();
    let r = 0.002;
    let top = at(PI / 4.0 / r);
    let bottom = at(3.0 * PI / 4.0 / r);
    assert!((xi1[top] - 1.0).abs() < 1e-3 && xi2[top].abs() < 1e-3);
    assert!(xi1[bottom].abs() < 1e-3 && (xi2[bottom] - 1.0).abs() < 1e-3);
    assert!(xi1
        .iter()
        .zip(&xi2)
        .all(|(a, b)| (a + b - 1.0).abs() < 1e-12));
}

#[test]
fn fig2_carrier_average_is_one() {
    let dir = tempfile::tempdir().unwrap();
    assert!(ncho(&["figure", "fig2", "--out", path_arg(dir.path())])
        .status
        .success());
    let meta = read_json(&dir.path().join("fig2_zoom.meta.json"));
    let r = meta["frequencies"]["gamma_over_omega"].as_f64().unwrap();
    let (h, rows) = read_csv(&dir.path().join("fig2_zoom.csv"));
    let wt = column(&h, &rows, "Omega_t");
    let d = column(&h, &rows, "dxi1");
    let line = column(&h, &rows, "modulation");
    // one carrier period π in Ωt, trapezoid
    let end = wt.iter().position(|&x| x >= PI - 1e-12).unwrap();
    let mut integral = 0.0;
    for i in 0..end {
        integral += 0.5 * (d[i] + d[i + 1]) * (wt[i + 1] - wt[i]);
    }
    let average = integral / (wt[end] - wt[0]) / r;
    assert!((average - 1.0).abs() < 1e-2, "{average}");
    for (x, l) in wt.iter().zip(&line) {
        assert!((l - r * (1.0 - (2.0 * x).sin())).abs() < 1e-12);
    }
}

#[test]
fn supplementary_frames_vanish_without_deformation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"params": {"m": 1.0, "omega": 1.0, "hbar": 1.0, "theta": 0.0, "eta": 0.0},
            "grid": {"s_min": -3.0, "s_max": 3.0, "k_min": -3.0, "k_max": 3.0, "ns": 31, "nk": 31}}"#,
    );
    let out = ncho(&[
        "figure",
        "figS",
        "--config",
        &cfg,
        "--out",
        path_arg(dir.path()),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (h, rows) = read_csv(&dir.path().join("figS_frames.csv"));
    assert_eq!(rows.len(), 3 * 8 * 31 * 31);
    assert!(column(&h, &rows, "value").iter().all(|v| *v == 0.0));
    let meta = read_json(&dir.path().join("figS_frames.meta.json"));
    assert_eq!(meta["extra"]["frames_per_mode"], 8);
}

#[test]
fn supplementary_frames_are_nonzero_with_deformation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"grid": {"s_min": -3.0, "s_max": 3.0, "k_min": -3.0, "k_max": 3.0, "ns": 21, "nk": 21},
            "modes": [{"n1": 0, "n2": 1}]}"#,
    );
    let out = ncho(&[
        "figure",
        "figS",
        "--config",
        &cfg,
        "--scale",
        "10",
        "--out",
        path_arg(dir.path()),
    ]);
    assert!(out.status.success());
    let (h, rows) = read_csv(&dir.path().join("figS_frames.csv"));
    assert_eq!(rows.len(), 8 * 21 * 21);
    assert!(column(&h, &rows, "scale").iter().all(|s| *s == 10.0));
    assert!(column(&h, &rows, "value").iter().any(|v| v.abs() > 1e-8));
}

#[test]
fn json_mirrors_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv_dir = dir.path().join("csv");
    let json_dir = dir.path().join("json");
    assert!(ncho(&["figure", "fig3", "--out", path_arg(&csv_dir)])
        .status
        .success());
    assert!(ncho(&[
        "figure",
        "fig3",
        "--format",
        "json",
        "--out",
        path_arg(&json_dir)
    ])
    .status
    .success());
    let (h, rows) = read_csv(&csv_dir.join("fig3_zoom.csv"));
    let v = read_json(&json_dir.join("fig3_zoom.json"));
    let headers: Vec<String> = v["headers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().into())
        .collect();
    assert_eq!(headers, h);
    for (j, name) in h.iter().enumerate() {
        let col = v["columns"][j].as_array().unwrap();
        assert_eq!(col.len(), rows.len(), "{name}");
        for (i, x) in col.iter().enumerate() {
            assert_eq!(x.as_f64().unwrap(), rows[i][j]);
        }
    }
}
