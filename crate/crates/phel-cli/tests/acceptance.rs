//! One PASS/FAIL line per acceptance criterion. Criteria 1 to 13 come from
//! `phel verify` on the shipped scenario, read back from its report;
//! criterion 14 reruns scenarios with different thread counts and compares
//! the CSV bytes.

mod common;

use common::{code, phel, small, write, SMALL};
use phel_cli::{read_report, ReportLine};
use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

const CRITERIA: [(&str, &str); 13] = [
    ("one_body_propagator", "one-body propagator against spectral oracle"),
    ("one_body_norm", "one-body norm conservation"),
    ("goursat_cauchy", "Goursat and Cauchy consistency"),
    ("two_body_picard", "two-body contact evolution against Picard iteration"),
    ("two_body_probability", "two-body probability conservation"),
    ("two_body_boundary", "two-body boundary residual"),
    ("leaky_monotone", "three-body leaky norm monotonicity"),
    ("flux_identity", "wall flux identity and probability balance"),
    ("diagram_convergence", "convergence of the truncated diagram sums"),
    ("massless_oracle", "massless closed-form oracle"),
    ("contraction", "leaky contraction suite"),
    ("deficiency", "deficiency kernel residual order"),
    ("joint_conservation", "joint conservation of the multi-time current"),
];

fn csv_bytes(out: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(out)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "csv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect()
}

fn summary(lines: &[&ReportLine]) -> String {
    lines
        .iter()
        .map(|l| format!("{} = {:.3e} ({})", l.name.split('/').nth(1).unwrap_or(&l.name), l.measured, l.threshold))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Same scenarios under one and four worker threads.
fn determinism(dir: &Path) -> (bool, String) {
    let scenarios = [
        ("equal_time", SMALL.to_string()),
        ("multitime", small("three_body_multitime", "times = [0.125, 0.1875, 0.25]")),
        ("free", small("free", "")),
        ("convergence", small("convergence", "")),
    ];
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, text) in scenarios {
        let sc = write(dir, &format!("{name}.toml"), &text);
        let runs: Vec<_> = ["1", "4"]
            .iter()
            .map(|n| {
                let out = dir.join(format!("{name}_{n}"));
                let o = phel(&["run", sc.to_str().unwrap(), "--threads", n, "--out", out.to_str().unwrap()]);
                (code(&o), csv_bytes(&out))
            })
            .collect();
        let same = runs[0] == runs[1] && !runs[0].1.is_empty();
        ok &= same;
        notes.push(format!("{name}: {} files {}", runs[0].1.len(), if same { "identical" } else { "DIFFER" }));
    }
    (ok, notes.join(", "))
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify");
    let start = Instant::now();
    let o = phel(&["verify", "--out", out.to_str().unwrap()]);
    let elapsed = start.elapsed().as_secs_f64();
    let report = match read_report(&out.join("report.csv")) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("no report: {e}\n{}", String::from_utf8_lossy(&o.stderr));
            return ExitCode::FAILURE;
        }
    };
    println!("phel verify on the shipped scenario: exit {} after {elapsed:.1} s", code(&o));
    let mut all = code(&o) == 0;
    for (k, (section, title)) in CRITERIA.iter().enumerate() {
        let lines: Vec<&ReportLine> = report.iter().filter(|l| l.name.split('/').next() == Some(*section)).collect();
        let pass = !lines.is_empty() && lines.iter().all(|l| l.passed);
        all &= pass;
        println!("{} criterion {:>2} {title}: {}", if pass { "PASS" } else { "FAIL" }, k + 1, summary(&lines));
    }
    let suite_det: Vec<&ReportLine> = report.iter().filter(|l| l.name.starts_with("determinism/")).collect();
    let (same, notes) = determinism(dir.path());
    let pass = same && !suite_det.is_empty() && suite_det.iter().all(|l| l.passed);
    all &= pass;
    println!("{} criterion 14 determinism across thread counts: {notes}; {}", if pass { "PASS" } else { "FAIL" }, summary(&suite_det));
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
