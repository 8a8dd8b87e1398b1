#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub const AR1: &str = r#"{"kind":"shifted_ar1","shift":10.0,"phi":0.5,"noise_sd":1.0}"#;

pub fn dyntaylor(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyntaylor"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn dyntaylor")
}

/// A scratch directory holding `ar1.json` and a 4000-point trajectory `traj.csv`.
pub fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("ar1.json"), AR1).unwrap();
    let out = dyntaylor(
        dir.path(),
        &["simulate", "--spec", "ar1.json", "--n", "4000", "--seed", "7", "--out", "traj.csv"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    dir
}

pub fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas")
}
