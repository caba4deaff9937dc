#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub const FIXTURES: [&str; 7] = ["T1", "T2", "G1", "G2t", "G4", "G6", "W1"];

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.lg"))
}

pub fn lga(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lga")).args(args).env("LGA_COLOR", "never").output().expect("binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

pub fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lga-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
