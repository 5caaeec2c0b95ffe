use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_asymscat")).args(args).output().unwrap()
}

fn write_local_well(path: &Path) {
    write_uniform(path, "[-2.0, 0.0]");
}

fn write_uniform(path: &Path, value: &str) {
    let values = vec![value; 201].join(", ");
    let text = format!(r#"{{ "type": "sampled", "d": 1.0, "n": 201, "is_local": true, "values": [{values}] }}"#);
    std::fs::write(path, text).unwrap();
}

#[test]
fn solve_reports_amplitudes_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let kernel = dir.path().join("well.json");
    write_local_well(&kernel);
    let out = run(&["solve", "--kernel", kernel.to_str().unwrap(), "--k", "1", "--adjoint"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.to_string().contains("t_left"));
}

#[test]
fn input_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let kernel = dir.path().join("well.json");
    write_local_well(&kernel);
    let k = kernel.to_str().unwrap();
    assert_eq!(run(&["solve", "--kernel", k, "--k", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--kernel", k]).status.code(), Some(1));
    assert_eq!(run(&["sweep", "--kernel", k, "--k-range", "1:2"]).status.code(), Some(1));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{ "type": "sampled", "d": 1.0, "n": 3, "is_local": true }"#).unwrap();
    let out = run(&["solve", "--kernel", bad.to_str().unwrap(), "--k", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("values"));
    let forbidden = run(&["design", "--device", "ta", "--constraint", "pt", "--out", "/dev/null"]);
    assert_eq!(forbidden.status.code(), Some(1));
}

#[test]
fn false_symmetry_claim_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let kernel = dir.path().join("well.json");
    write_local_well(&kernel);
    let k = kernel.to_str().unwrap();
    let ok = run(&["verify", "--kernel", k, "--k-range", "0.5:2:5", "--claim", "II", "--claim", "VI"]);
    assert!(ok.status.success(), "{}", String::from_utf8_lossy(&ok.stdout));
    // An absorbing well keeps parity and locality but loses V.
    let lossy = dir.path().join("lossy.json");
    write_uniform(&lossy, "[-2.0, 0.5]");
    let k = lossy.to_str().unwrap();
    let report = dir.path().join("report.json");
    let bad = run(&["verify", "--kernel", k, "--k-range", "0.5:2:5", "--claim", "V", "--out", report.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(3));
    assert!(std::fs::read_to_string(report).unwrap().contains("\"holds\": false"));
}

#[test]
fn design_writes_kernel_sweep_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    let out = run(&[
        "design", "--device", "tra", "--out", &p("k.json"), "--sweep-out", &p("s.csv"), "--manifest", &p("m.json"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(p("s.csv")).unwrap();
    assert_eq!(csv.lines().count(), 42);
    let manifest: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(p("m.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "design");
    assert_eq!(manifest["seed"], 0);
    // The written kernel re-solves to the design target.
    let solved = run(&["solve", "--kernel", &p("k.json"), "--k", "1", "--quadrature", "simpson", "--n-grid", "401"]);
    let v: serde_json::Value = serde_json::from_slice(&solved.stdout).unwrap();
    let tl = &v["direct"]["t_left"];
    assert!((tl[0].as_f64().unwrap() - 1.0).abs() < 1e-6, "{v}");
}

#[test]
fn config_file_sets_solver_and_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let kernel = dir.path().join("well.json");
    write_local_well(&kernel);
    let good = dir.path().join("good.toml");
    std::fs::write(&good, "quadrature = \"simpson\"\n").unwrap();
    let k = kernel.to_str().unwrap();
    let manifest = dir.path().join("m.json");
    let out = run(&[
        "solve", "--kernel", k, "--k", "1", "--config", good.to_str().unwrap(), "--manifest", manifest.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(std::fs::read_to_string(manifest).unwrap().contains("simpson"));
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "quadratur = \"simpson\"\n").unwrap();
    assert_eq!(run(&["solve", "--kernel", k, "--k", "1", "--config", bad.to_str().unwrap()]).status.code(), Some(1));
}
