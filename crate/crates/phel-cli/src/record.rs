use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormSample {
    pub series: String,
    pub time: f64,
    pub norm_sq: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct FluxTotals {
    pub c1: f64,
    pub c2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub stage: String,
    pub seconds: f64,
}

/// Summary of one invocation, written as `record.json` next to the outputs.
/// `complete` is false when the run stopped early; the manifest then lists
/// only the files written before the failure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub scenario_hash: String,
    pub mode: String,
    pub threads: usize,
    pub seed: u64,
    pub complete: bool,
    pub error: Option<String>,
    pub norms: Vec<NormSample>,
    pub flux_totals: Option<FluxTotals>,
    pub timing: Vec<Timing>,
    pub manifest: Vec<String>,
    pub checks_failed: usize,
}

impl RunRecord {
    pub fn new(scenario_hash: String, mode: String, threads: usize, seed: u64) -> Self {
        Self {
            scenario_hash,
            mode,
            threads,
            seed,
            complete: false,
            error: None,
            norms: Vec::new(),
            flux_totals: None,
            timing: Vec::new(),
            manifest: Vec::new(),
            checks_failed: 0,
        }
    }

    pub fn norm(&mut self, series: &str, time: f64, norm_sq: f64) {
        self.norms.push(NormSample { series: series.to_string(), time, norm_sq });
    }

    pub fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timing.push(Timing { stage: stage.to_string(), seconds: start.elapsed().as_secs_f64() });
        out
    }

    pub fn path(dir: &Path) -> PathBuf {
        dir.join("record.json")
    }

    pub fn write(&self, dir: &Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("record serializes");
        std::fs::write(Self::path(dir), text)
    }

    pub fn read(dir: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(Self::path(dir))?;
        serde_json::from_str(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
    }
}
