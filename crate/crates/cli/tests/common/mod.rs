#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_json(name: &str) -> Value {
    serde_json::from_slice(&std::fs::read(fixture(name)).unwrap()).unwrap()
}

/// Writes `config` to a fresh temp dir and runs the binary on it.
pub fn run_with(subcommand: &str, config: &Value, extra: &[&str]) -> (Output, Option<Vec<u8>>) {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("config.json");
    let out = dir.path().join("report.json");
    std::fs::write(&cfg, serde_json::to_vec_pretty(config).unwrap()).unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_thetaloc"))
        .arg(subcommand)
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .args(extra)
        .output()
        .unwrap();
    (output, std::fs::read(&out).ok())
}

pub fn report(bytes: &Option<Vec<u8>>) -> Value {
    serde_json::from_slice(bytes.as_ref().expect("report written")).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}
