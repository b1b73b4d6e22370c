use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn swalg(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swalg"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("SWALG_OUT_DIR")
        .output()
        .expect("run swalg")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn spectrum_degeneracies() {
    let dir = tempfile::tempdir().unwrap();
    let out = swalg(&["spectrum", "--D", "2", "--n-max", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&dir.path().join("spectrum.json"));
    let degs: Vec<u64> = v["tables"]["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["degeneracy"].as_u64().unwrap())
        .collect();
    assert_eq!(degs, [1, 4, 10]);
    let summary = read_json(&dir.path().join("summary.json"));
    assert_eq!(summary[0]["suite"], "spectrum");
    assert_eq!(summary[0]["failures"], 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("spectrum: PASS"));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["spectrum", "--D", "1"],
        vec!["spectrum", "--bogus"],
        vec!["spectrum", "--format", "xml"],
        vec!["verify-matrix-elements", "--D", "3"],
        vec!["spectrum", "--omega", "-1"],
    ] {
        let out = swalg(&args, dir.path());
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn failures_exit_1_and_still_write_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = swalg(&["verify-basis", "--tol", "1e-30"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let summary = read_json(&dir.path().join("summary.json"));
    assert!(summary[0]["failures"].as_u64().unwrap() > 0);
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_swalg"))
        .args(["spectrum", "--n-max", "1"])
        .env("SWALG_OUT_DIR", dir.path())
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("spectrum.json").exists());
    assert!(dir.path().join("summary.json").exists());
}

#[test]
fn config_files_json_and_key_value() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("cfg.json");
    std::fs::write(&json, r#"{"D": 3, "n-max": 1}"#).unwrap();
    let kv = dir.path().join("cfg.txt");
    std::fs::write(&kv, "# comment\nD = 3\nn-max = 1\n").unwrap();
    for cfg in [&json, &kv] {
        let out = swalg(&["spectrum", "--config", cfg.to_str().unwrap()], dir.path());
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let v = read_json(&dir.path().join("spectrum.json"));
        let degs: Vec<u64> = v["tables"]["spectrum"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["degeneracy"].as_u64().unwrap())
            .collect();
        assert_eq!(degs, [1, 6]);
    }
    // Flags override the file.
    let out = swalg(
        &["spectrum", "--config", json.to_str().unwrap(), "--D", "2"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        read_json(&dir.path().join("spectrum.json"))["details"]["D"],
        2
    );
    std::fs::write(&kv, "nonsense = 4\n").unwrap();
    assert_eq!(
        swalg(&["spectrum", "--config", kv.to_str().unwrap()], dir.path())
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn json_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [a.path(), b.path()] {
        assert_eq!(
            swalg(&["verify-reduction", "--seed", "7"], d).status.code(),
            Some(0)
        );
    }
    let x = std::fs::read(a.path().join("verify-reduction.json")).unwrap();
    let y = std::fs::read(b.path().join("verify-reduction.json")).unwrap();
    assert_eq!(x, y);
}

#[test]
fn matrix_elements_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = swalg(
        &["verify-matrix-elements", "--D", "2", "--max-j", "1.5"],
        dir.path(),
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let summary = read_json(&dir.path().join("summary.json"));
    assert!(summary[0]["max-error"].as_f64().unwrap() < 1e-7);
}

#[test]
fn csv_and_text_formats() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        swalg(&["spectrum", "--format", "csv", "--n-max", "2"], dir.path())
            .status
            .code(),
        Some(0)
    );
    let csv = std::fs::read_to_string(dir.path().join("spectrum-spectrum.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("N,degeneracy,energy,sw-energy"));
    assert_eq!(lines.count(), 3);
    assert_eq!(
        swalg(
            &["enumerate", "--format", "text", "--n-max", "1"],
            dir.path()
        )
        .status
        .code(),
        Some(0)
    );
    assert!(dir.path().join("enumerate.txt").exists());
}
