use std::path::PathBuf;
use std::process::Command;

use scottsc::cli::{config_from_json, run, RunConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scottsc"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("scottsc-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn hydrogen_prints_closed_form() {
    let out = bin().args(["hydrogen", "--z", "1", "--h", "0.1"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().last().unwrap();
    let sum: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(sum, -70.0);
}

#[test]
fn exit_statuses() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code();
    assert_eq!(code(&["nonsense"]), Some(2));
    assert_eq!(code(&["hydrogen", "--h", "0.1,0.2"]), Some(2));
    assert_eq!(code(&["tf-atom", "--a-rule", "h^-0.8"]), Some(2));
    assert_eq!(code(&["coherent-check", "--a-rule", "h^2"]), Some(2));
    assert_eq!(code(&["local-trace", "--h", "0.1", "--points", "2"]), Some(0));
    assert_eq!(code(&["local-trace", "--h", "0.1", "--points", "2", "--strict"]), Some(1));
    assert_eq!(code(&["local-trace", "--h", "0.1", "--strict"]), Some(0));
}

#[test]
fn thread_variable_is_validated() {
    let out = bin().env("SCOTTSC_THREADS", "many").args(["hydrogen"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().env("SCOTTSC_THREADS", "1").args(["hydrogen"]).output().unwrap();
    assert!(out.status.success());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = scratch("determinism");
    let mut csv = Vec::new();
    let mut sidecars = Vec::new();
    for i in 0..3 {
        let path = dir.join(format!("run{i}.csv"));
        let status = bin()
            .args(["scott", "--h", "0.12,0.09,0.06", "--points", "1000", "--out"])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        let text = std::fs::read_to_string(&path).unwrap();
        // the output path is part of the recorded config
        csv.push(text.replace(&format!("run{i}.csv"), "run.csv"));
        sidecars.push(std::fs::read_to_string(format!("{}.json", path.display())).unwrap().replace(&format!("run{i}.csv"), "run.csv"));
    }
    assert_eq!(csv[0], csv[1]);
    assert_eq!(csv[1], csv[2]);
    assert_eq!(sidecars[0], sidecars[2]);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn headers_reproduce_their_runs() {
    let dir = scratch("roundtrip");
    let cases: [&[&str]; 4] = [
        &["hydrogen", "--h", "0.2,0.1,0.05"],
        &["weyl", "--z", "2", "--h", "1,0.5", "--format", "json"],
        &["tf-atom", "--z", "3", "--points", "2000"],
        &["coherent-check", "--h", "0.4", "--a-rule", "h^-0.7"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let path = dir.join(format!("out{i}"));
        let status = bin().args(*args).arg("--out").arg(&path).status().unwrap();
        assert!(status.success(), "{args:?}");
        let text = std::fs::read_to_string(&path).unwrap();
        let cfg: RunConfig = if text.starts_with('#') {
            let sidecar = std::fs::read_to_string(format!("{}.json", path.display())).unwrap();
            assert_eq!(config_from_json(&sidecar).unwrap(), RunConfig::from_header(&text).unwrap());
            RunConfig::from_header(&text).unwrap()
        } else {
            config_from_json(&text).unwrap()
        };
        let again = run(&RunConfig { output_path: None, ..cfg.clone() }).unwrap();
        assert_eq!(again.config.parameters, cfg.parameters);
        let again = run(&cfg).unwrap();
        assert_eq!(again.rendered, text, "{args:?}");
    }
    std::fs::remove_dir_all(dir).unwrap();
}
