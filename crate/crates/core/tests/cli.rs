// Copyright 2026 The cvdec Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const THERMAL_CAT: &str = r#"{
  "name": "cat in a thermal bath",
  "kind": "cat",
  "state": {"x0": [1.0, 1.0], "r0": 0.0, "theta": 0.0},
  "baths": [{"gamma": 1.0, "mu_inf": 0.5, "r_inf": 0.0, "phi_inf": 0.0}],
  "time": {"start": 0.0, "stop": 1.0, "points": 6, "spacing": "linear"},
  "quantities": ["purity", "xi"]
}"#;

const FOCK_ORACLE: &str = r#"{
  "kind": "fock",
  "state": {"n": 1},
  "baths": [{"gamma": 1.0, "mu_inf": 0.5, "r_inf": 0.0, "phi_inf": 0.0}],
  "time": {"start": 0.0, "stop": 1.0, "points": 3, "spacing": "linear"},
  "quantities": ["purity"],
  "oracle": true
}"#;

fn cvdec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvdec")).args(args).env("CVDEC_THREADS", "2").output().expect("spawn cvdec")
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(config: &Path, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["run", config.to_str().unwrap(), "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    cvdec(&args)
}

#[test]
fn run_writes_csv_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cat.json", THERMAL_CAT);
    let out = dir.path().join("cat.csv");
    let res = run(&cfg, &out, &[]);
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,purity,xi"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 6);
    assert!((rows[0][1] - 1.0).abs() < 1e-12);
    assert!(rows.iter().all(|r| r.iter().all(|v| v.is_finite())));
    assert!(rows[0][2] > 0.0 && rows[5][2] == 0.0);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cat.json", THERMAL_CAT);
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert_eq!(run(&cfg, &a, &[]).status.code(), Some(0));
    let single = Command::new(env!("CARGO_BIN_EXE_cvdec"))
        .args(["run", cfg.to_str().unwrap(), "--out", b.to_str().unwrap()])
        .env("CVDEC_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn oracle_columns_and_tolerance_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "fock.json", FOCK_ORACLE);
    let out = dir.path().join("fock.csv");
    let ok = run(&cfg, &out, &["--oracle"]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next(), Some("t,purity,purity_oracle,purity_absdev"));
    let strict = run(&cfg, &out, &["--oracle", "--tolerance", "1e-300"]);
    assert_eq!(strict.status.code(), Some(2));
}

#[test]
fn config_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let unknown = write(dir.path(), "bad.json", &THERMAL_CAT.replace("\"theta\"", "\"phase\""));
    assert_eq!(run(&unknown, &out, &[]).status.code(), Some(1));
    let bad_quantity = write(dir.path(), "q.json", &THERMAL_CAT.replace("\"xi\"", "\"entropy\""));
    assert_eq!(run(&bad_quantity, &out, &[]).status.code(), Some(1));
    let unphysical = write(dir.path(), "mu.json", &THERMAL_CAT.replace("\"mu_inf\": 0.5", "\"mu_inf\": 1.5"));
    assert_eq!(run(&unphysical, &out, &[]).status.code(), Some(1));
    assert_eq!(run(&dir.path().join("missing.json"), &out, &[]).status.code(), Some(1));
    assert_eq!(cvdec(&["run"]).status.code(), Some(1));
    assert_eq!(cvdec(&["run", unknown.to_str().unwrap(), "--out", out.to_str().unwrap(), "--tolerance", "0"]).status.code(), Some(1));
    assert_eq!(cvdec(&["--version"]).status.code(), Some(0));
}
