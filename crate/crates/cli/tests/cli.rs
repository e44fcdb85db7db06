use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn horolat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horolat")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("horolat-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_config(dir: &Path, json: &str) -> String {
    let p = dir.join("config.json");
    std::fs::write(&p, json).unwrap();
    p.to_string_lossy().into_owned()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn length_table_writes_report_and_csv() {
    let dir = scratch("table");
    let out = horolat(&["length-table", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.join("length-table.json").exists());
    let csv = std::fs::read_to_string(dir.join("length_table.csv")).unwrap();
    assert!(csv.lines().count() > 1);
    assert!(String::from_utf8_lossy(&out.stdout).lines().all(|l| !l.starts_with("[FAIL]")));
}

#[test]
fn same_seed_gives_identical_json() {
    let a = horolat(&["seminorm", "--seed", "7", "--tol", "0"]);
    let b = horolat(&["seminorm", "--seed", "7", "--tol", "0"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let c = horolat(&["seminorm", "--seed", "8", "--tol", "0"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn facets_of_hexagon() {
    let dir = scratch("facets");
    let cfg = write_config(&dir, r#"{"length": {"word": [[1,0],[0,1],[1,1]]}}"#);
    let out = horolat(&["--config", &cfg, "facets"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["command"], "facets");
    assert!(v["assertions"].as_array().unwrap().iter().all(|a| a["pass"] == true));
}

#[test]
fn freegroup_values() {
    let out = horolat(&["freegroup"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(!v["assertions"].as_array().unwrap().is_empty());
}

#[test]
fn invalid_config_exits_two() {
    let dir = scratch("invalid");
    let unknown = write_config(&dir, r#"{"lenght": {"word": [[1]]}}"#);
    assert_eq!(horolat(&["--config", &unknown, "facets"]).status.code(), Some(2));
    let cfg = write_config(&dir, r#"{"length": {"beta": {"dim": 1, "beta": 1.5}}}"#);
    assert_eq!(horolat(&["--config", &cfg, "length-table"]).status.code(), Some(2));
    let cfg = write_config(&dir, r#"{"length": {"word": [[1],[2]]}, "theta": 0.5}"#);
    assert_eq!(horolat(&["--config", &cfg, "facets", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(horolat(&["--config", "/nonexistent/config.json", "facets"]).status.code(), Some(2));
    let cfg = write_config(&dir, r#"{"length": {"word": [[0]]}}"#);
    assert_eq!(horolat(&["--config", &cfg, "facets"]).status.code(), Some(2));
}

#[test]
fn unconverged_truncation_exits_three() {
    let dir = scratch("budget");
    let cfg = write_config(&dir, r#"{"length": {"word": [[1,0],[0,1]]}, "theta": 0.3, "truncation_radius": 4, "tol": 1e-12}"#);
    let out = horolat(&["--config", &cfg, "seminorm"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn accept_filter_and_fault() {
    let dir = scratch("accept");
    let out = horolat(&["accept", "--check", "14"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 1);
    assert_eq!(results[0]["id"], 14);

    let cfg = write_config(&dir, r#"{"acceptance": {"inject_fault": true}}"#);
    let out = horolat(&["--config", &cfg, "accept", "--check", "support functionals"]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(horolat(&["accept", "--check", "no such criterion"]).status.code(), Some(2));
}
