//! End-to-end runs of the `cmvwalk` binary.

use std::process::{Command, Output};

fn cmvwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmvwalk")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cmvwalk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(text: &str) -> Vec<(usize, f64)> {
    text.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let mut cols = l.split(',');
            (cols.next().unwrap().parse().unwrap(), cols.next().unwrap().parse().unwrap())
        })
        .collect()
}

#[test]
fn hadamard_one_step() {
    assert_eq!(stdout(&["simulate", "--walk-type", "1", "--coin", "hadamard", "--steps", "1"]), "x,probability\n0,0.5\n1,0.5\n");
}

#[test]
fn reflecting_free_walk_moves_ballistically() {
    assert_eq!(stdout(&["simulate", "--walk-type", "2", "--coin", "real:0", "--steps", "7"]), "x,probability\n7,1\n");
}

#[test]
fn tree_walk_returns_to_root() {
    let r = rows(&stdout(&["simulate", "--tree", "3", "--case", "B", "--steps", "400"]));
    assert_eq!(r[0].0, 0);
    assert!((r[0].1 - 0.25).abs() < 2e-2, "{}", r[0].1);
}

#[test]
fn tree_subcommand_columns() {
    let text = stdout(&["tree", "--kappa", "3", "--xmax", "2", "--steps", "200"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,probability,cesaro,simulated"));
    let first: Vec<f64> = lines.next().unwrap().split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(&first[..3], &[0.0, 0.25, 0.125]);
    assert!((first[3] - 0.25).abs() < 2e-2);
    assert!(text.ends_with("# escape_mass=0.5\n"));
}

#[test]
fn limit_outputs() {
    assert_eq!(
        stdout(&["limit", "--tree", "3", "--case", "B", "--xmax", "1"]),
        "x,probability,cesaro\n0,0.25,0.125\n1,0.375,0.1875\n# escape_mass=0.5\n"
    );
    let r = rows(&stdout(&["limit", "--alpha", "0.6", "--xmax", "2"]));
    for (x, p) in r {
        assert!((p - 0.45 * 0.25f64.powi(x as i32)).abs() < 1e-12);
    }
    let zeros: serde_json::Value = serde_json::from_str(&stdout(&["limit", "--walk-type", "2", "--alpha=-0.3333333333333333", "--json"])).unwrap();
    assert!(zeros["p"].as_array().unwrap().iter().all(|p| p.as_f64() == Some(0.0)));
    assert_eq!(zeros["escape_mass"].as_f64(), Some(1.0));
}

#[test]
fn spectrum_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["spectrum", "--alpha", "0.6", "--samples", "64"])).unwrap();
    assert_eq!(v["atoms"][0]["theta"].as_f64(), Some(0.0));
    assert_eq!(v["atoms"][0]["mass"].as_f64(), Some(0.6));
    assert_eq!(v["ac"].as_array().unwrap().len(), 128);
    assert!((v["total_mass"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    let from_coin: serde_json::Value =
        serde_json::from_str(&stdout(&["spectrum", "--walk-type", "2", "--coin", "real:0.2"])).unwrap();
    assert_eq!(from_coin["atoms"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_suite_reports_pass() {
    let text = stdout(&["verify", "--suite", "conjugation"]);
    assert_eq!(text.lines().filter(|l| l.ends_with("PASS")).count(), 2);
    let strict = cmvwalk(&["verify", "--suite", "normalization", "--tol", "0"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn output_is_reproducible() {
    let args = ["simulate", "--coin", "matrix:0.6,0;0.8,0;0.8,0;-0.6,0", "--init", "0.6,0.8i", "--steps", "40"];
    assert_eq!(stdout(&args), stdout(&args));
    let spectrum = ["spectrum", "--alpha", "0.3+0.4i"];
    assert_eq!(stdout(&spectrum), stdout(&spectrum));
}

#[test]
fn output_file_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.csv");
    let path_str = path.to_str().unwrap();
    assert!(cmvwalk(&["simulate", "--steps", "1", "--output", path_str]).status.success());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "x,probability\n0,0.5\n1,0.5\n");
    let bad = dir.path().join("bad.csv");
    let out = cmvwalk(&["simulate", "--coin", "real:1.5", "--steps", "1", "--output", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!bad.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn configuration_errors_exit_with_two() {
    for args in [
        &["simulate", "--coin", "matrix:1,0;0,0;0,0;2,0", "--steps", "3"][..],
        &["simulate", "--init", "1,1", "--steps", "3"],
        &["spectrum", "--alpha", "1.2"],
        &["limit", "--tree", "1"],
        &["verify", "--suite", "bogus"],
        &["simulate", "--walk-type", "3", "--steps", "1"],
    ] {
        let out = cmvwalk(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let seeded = Command::new(env!("CARGO_BIN_EXE_cmvwalk"))
        .args(["verify", "--suite", "eigen"])
        .env("CMVWALK_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(seeded.status.code(), Some(2));
}
