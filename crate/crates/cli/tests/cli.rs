use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_landau-cyl")).args(args).output().unwrap()
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let text = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (value, out.status.code().unwrap())
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn spectrum_levels_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("levels.csv");
    let (r, code) = report(&["spectrum", "--window", "-3,3", "--levels", "3", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["pass"], true);
    let levels = r["results"]["levels"].as_array().unwrap();
    for (n, l) in levels.iter().enumerate() {
        assert!((l["energy"].as_f64().unwrap() - (n as f64 + 0.5)).abs() < 1e-3);
        assert_eq!(l["degeneracy"], 7);
    }
    let table = std::fs::read_to_string(csv).unwrap();
    assert!(table.starts_with("level,energy,analytic,degeneracy,spread"));
    assert_eq!(table.lines().count(), 4);
    // every numeric claim carries its tolerance
    for c in r["checks"].as_array().unwrap() {
        assert!(c["tolerance"].is_number());
    }
}

#[test]
fn malformed_config_fails() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"B": 1.0, "typo": 2}"#);
    let out = run(&["spectrum", "--config", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed config"));
}

#[test]
fn holonomy_phases() {
    let dir = tempfile::tempdir().unwrap();
    let pot = write(dir.path(), "p.json", r#"{"zeta": 0.5}"#);
    let lp = write(dir.path(), "l.json", r#"{"vertices": [[0, 0], [3.141592653589793, 0], [6.283185307179586, 0]]}"#);
    let (r, code) = report(&["holonomy", "--potential", &pot, "--loop", &lp]);
    assert_eq!(code, 0);
    let h = &r["results"]["loops"][0]["holonomy"];
    assert!((h[0].as_f64().unwrap() + 1.0).abs() < 1e-9 && h[1].as_f64().unwrap().abs() < 1e-9);

    // contractible loops do not see ζ
    let rect = write(dir.path(), "r.json", r#"{"vertices": [[0, 0], [1, 0], [1, 1], [0, 1], [0, 0]]}"#);
    let phase = |zeta: &str| {
        let p = write(dir.path(), "z.json", &format!(r#"{{"zeta": {zeta}}}"#));
        report(&["holonomy", "--potential", &p, "--loop", &rect]).0["results"]["loops"][0]["phase"]
            .as_f64()
            .unwrap()
    };
    assert!((phase("0.0") - phase("0.37")).abs() < 1e-12);

    let open = write(dir.path(), "o.json", r#"{"vertices": [[0, 0], [1, 0], [1, 1]]}"#);
    let out = run(&["holonomy", "--loop", &open]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not closed"));
}

#[test]
fn classify_compares_holonomies() {
    let (r, code) = report(&["classify", "--zeta", "0.25", "--zeta", "2.25"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["equivalent"], true);
    let (r, _) = report(&["classify", "--zeta", "0", "--zeta", "0.5"]);
    assert_eq!(r["results"]["equivalent"], false);
    assert_eq!(r["pass"], true);
}

#[test]
fn symmetry_check() {
    let (r, code) = report(&["symmetry-check", "--phi", "3.141592653589793", "--k", "1", "--seed", "4"]);
    assert_eq!(code, 0);
    let e = &r["results"]["expected_phase"];
    assert!((e[0].as_f64().unwrap() + 1.0).abs() < 1e-12);
    assert_eq!(r["seed"], 4);

    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"B": 3.0}"#);
    let (r, _) = report(&["symmetry-check", "--config", &cfg, "--shift-length", "0.5"]);
    let adm = &r["results"]["admissibility"];
    assert_eq!(adm["verdict"], "non_admissible");
    let nearest: Vec<f64> = adm["nearest_admissible"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert!((nearest[0] - 1.0 / 3.0).abs() < 1e-12 && (nearest[1] - 2.0 / 3.0).abs() < 1e-12);

    let (r, code) = report(&["symmetry-check", "--k", "0", "--phi", "0.8"]);
    assert_eq!(code, 0);
    assert!(r["max_deviation"].as_f64().unwrap() < 1e-9);
}

#[test]
fn symmetry_check_is_deterministic() {
    let a = report(&["symmetry-check", "--seed", "9"]).0;
    let b = report(&["symmetry-check", "--seed", "9"]).0;
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["checks"].to_string(), b["checks"].to_string());
}

#[test]
fn rep_check() {
    let (r, code) = report(&["rep-check", "--nu", "1"]);
    assert_eq!(code, 0, "{r}");
    let (r, code) = report(&["rep-check", "--nu", "0.5"]);
    assert_eq!(code, 1);
    assert_eq!(r["pass"], false);
    let (r, code) = report(&["rep-check", "--nu", "2", "--lambda", "0"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["obstruction"], 0.0);
}

#[test]
fn groundstate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", r#"{"q": 0.25, "rho": 0.5}"#);
    let csv = dir.path().join("profile.csv");
    let (r, code) = report(&["groundstate", "--config", &cfg, "--n", "0", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(r["results"]["overlap"].as_f64().unwrap() >= 1.0 - 1e-6);
    let peak = r["results"]["peak_y"].as_f64().unwrap();
    let h = r["results"]["grid_spacing"].as_f64().unwrap();
    assert!((peak - 0.25).abs() <= h);
    assert!(std::fs::read_to_string(csv).unwrap().starts_with("y,analytic,numeric"));

    let out = run(&["groundstate", "--out", "/nonexistent-dir/report.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn step_size() {
    let (r, code) = report(&["step-size", "--b-gauss", "1", "--r-cm", "1"]);
    assert_eq!(code, 0);
    let s = r["results"]["step_cm"].as_f64().unwrap();
    assert!((s / 6.6e-8 - 1.0).abs() < 0.02);
    let (r, _) = report(&["step-size", "--b-gauss", "10000", "--r-cm", "1"]);
    assert!((r["results"]["step_cm"].as_f64().unwrap() - s / 1e4).abs() < 1e-18);
    assert_eq!(run(&["step-size", "--b-gauss", "0", "--r-cm", "1"]).status.code(), Some(2));
}

#[test]
fn tolerance_overrides() {
    let (r, code) = report(&["groundstate", "--tolerance-overrides", "overlap=0"]);
    assert_eq!(code, 1);
    assert_eq!(r["tolerances"]["overlap"], 0.0);
    assert_eq!(run(&["spectrum", "--tolerance-overrides", "bogus=1"]).status.code(), Some(2));
}

#[test]
fn report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["step-size", "--b-gauss", "2", "--r-cm", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(r["command"], "step-size");
    assert!(r["wall_time_s"].as_f64().unwrap() >= 0.0);
}
