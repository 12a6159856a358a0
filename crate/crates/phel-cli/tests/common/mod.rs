#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

/// Small lattice with a photon between two light electrons.
pub const SMALL: &str = r#"
[physics]
omega = 1.0
theta1 = 0.7
theta2 = -1.1

[photon]
center = 0.0
width = 0.15
momentum = 2.0
plus = [0.6, 0.5]

[electron1]
center = -0.4
width = 0.15
minus = [0.8, 0.2]
plus = [0.3, -0.4]

[electron2]
center = 0.4
width = 0.15

[grid]
lo = -1.0
hi = 1.0
spacing = 0.03125

[run]
mode = "three_body_equal_time"
t_final = 0.25
epsilon = 0.1
ladder = [0.4, 0.2, 0.1]
"#;

/// `SMALL` with the mode replaced and extra lines appended to `[run]`.
pub fn small(mode: &str, run_extra: &str) -> String {
    SMALL.replace(
        "mode = \"three_body_equal_time\"",
        &format!("mode = \"{mode}\"\n{run_extra}"),
    )
}

pub fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

pub fn phel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phel")).args(args).output().unwrap()
}

pub fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}
