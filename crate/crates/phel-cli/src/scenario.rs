use phel_free::Packet;
use phel_numerics::{PhysicalParams, C64};
use phel_threebody::ProductData3;
use phel_twobody::ProductData;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;
use std::path::Path;

/// The scenario shipped with the tool; `verify` on it passes every check.
pub const DEFAULT_SCENARIO: &str = include_str!("../scenarios/default.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Free,
    TwoBody,
    ThreeBodyEqualTime,
    ThreeBodyMultitime,
    Convergence,
    Verify,
}

impl Mode {
    fn is_three_body(self) -> bool {
        !matches!(self, Mode::Free | Mode::TwoBody)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::Free => "free",
            Mode::TwoBody => "two_body",
            Mode::ThreeBodyEqualTime => "three_body_equal_time",
            Mode::ThreeBodyMultitime => "three_body_multitime",
            Mode::Convergence => "convergence",
            Mode::Verify => "verify",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Physics {
    pub omega: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub delta0: f64,
}

impl Default for Physics {
    fn default() -> Self {
        Self { omega: 1.0, theta1: 0.0, theta2: 0.0, delta0: 0.1 }
    }
}

/// Gaussian packet `amp_ς · exp(−(s−center)²/width²) · exp(i momentum s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketSpec {
    pub center: f64,
    pub width: f64,
    #[serde(default)]
    pub momentum: f64,
    /// Amplitude of the `−` component as `[re, im]`.
    #[serde(default = "unit")]
    pub minus: [f64; 2],
    #[serde(default = "unit")]
    pub plus: [f64; 2],
}

fn unit() -> [f64; 2] {
    [1.0, 0.0]
}

impl PacketSpec {
    pub fn packet(&self) -> Packet {
        Packet {
            center: self.center,
            sharpness: 1.0 / (self.width * self.width),
            momentum: self.momentum,
            amplitudes: [C64::new(self.minus[0], self.minus[1]), C64::new(self.plus[0], self.plus[1])],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub spacing: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { lo: -1.0, hi: 1.0, spacing: 1.0 / 128.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub mode: Mode,
    #[serde(default = "one")]
    pub t_final: f64,
    /// Transition width of the leaky condition for single runs.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_ladder")]
    pub ladder: Vec<f64>,
    /// Photon, electron 1 and electron 2 times for multi-time snapshots.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<[f64; 3]>,
}

fn one() -> f64 {
    1.0
}

fn default_epsilon() -> f64 {
    0.1
}

fn default_ladder() -> Vec<f64> {
    vec![0.4, 0.2, 0.1, 0.05]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// Every `snapshot_stride`-th node along each axis goes into the
    /// snapshot. Defaults to 1 for one- and two-body modes, 4 otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snapshot_stride: Option<usize>,
    /// Number of equally spaced times in the norm series of the free and
    /// two-body modes.
    #[serde(default = "default_series")]
    pub series_points: usize,
}

fn default_series() -> usize {
    8
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self { snapshot_stride: None, series_points: default_series() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub physics: Physics,
    pub photon: PacketSpec,
    pub electron1: PacketSpec,
    pub electron2: PacketSpec,
    #[serde(default)]
    pub grid: GridSpec,
    pub run: RunSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("cannot parse scenario: {0}")]
    Parse(String),
    #[error("invalid scenario:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        let mut s: Scenario = toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        s.resolve();
        s.validate().map_err(ScenarioError::Invalid)?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ScenarioError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn shipped() -> Self {
        Self::parse(DEFAULT_SCENARIO).expect("shipped scenario is valid")
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_toml())
    }

    /// SHA-256 of the resolved scenario text.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_toml().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Fills defaults that depend on the mode.
    pub fn resolve(&mut self) {
        if self.output.snapshot_stride.is_none() {
            self.output.snapshot_stride = Some(if self.run.mode.is_three_body() { 4 } else { 1 });
        }
    }

    pub fn stride(&self) -> usize {
        self.output.snapshot_stride.unwrap_or(1)
    }

    /// Every violated invariant, each naming its field.
    pub fn validate(&self) -> Result<(), Vec<String>> {
        let mut bad = Vec::new();
        let mut finite = |name: &str, v: f64| {
            if !v.is_finite() {
                bad.push(format!("{name} = {v} must be finite"));
            }
        };
        let ph = &self.physics;
        finite("physics.omega", ph.omega);
        finite("physics.theta1", ph.theta1);
        finite("physics.theta2", ph.theta2);
        finite("physics.delta0", ph.delta0);
        for (name, p) in self.particles() {
            finite(&format!("{name}.center"), p.center);
            finite(&format!("{name}.width"), p.width);
            finite(&format!("{name}.momentum"), p.momentum);
            for (k, v) in p.minus.iter().chain(&p.plus).enumerate() {
                finite(&format!("{name}.{}", if k < 2 { "minus" } else { "plus" }), *v);
            }
        }
        finite("grid.lo", self.grid.lo);
        finite("grid.hi", self.grid.hi);
        finite("grid.spacing", self.grid.spacing);
        finite("run.t_final", self.run.t_final);
        finite("run.epsilon", self.run.epsilon);

        if ph.omega < 0.0 {
            bad.push(format!("physics.omega = {} must be >= 0", ph.omega));
        }
        if ph.delta0 <= 0.0 {
            bad.push(format!("physics.delta0 = {} must be > 0", ph.delta0));
        }
        for (name, p) in self.particles() {
            if p.width <= 0.0 {
                bad.push(format!("{name}.width = {} must be > 0", p.width));
            }
        }
        let g = &self.grid;
        if g.spacing <= 0.0 {
            bad.push(format!("grid.spacing = {} must be > 0", g.spacing));
        }
        if g.hi <= g.lo {
            bad.push(format!("grid.hi = {} must exceed grid.lo = {}", g.hi, g.lo));
        }
        if self.run.t_final < 0.0 {
            bad.push(format!("run.t_final = {} must be >= 0", self.run.t_final));
        }
        if self.run.epsilon < 0.0 {
            bad.push(format!("run.epsilon = {} must be >= 0", self.run.epsilon));
        }
        let ladder = &self.run.ladder;
        if ladder.is_empty() {
            bad.push("run.ladder must not be empty".into());
        }
        if ladder.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
            bad.push(format!("run.ladder = {ladder:?} must hold positive values"));
        }
        if ladder.windows(2).any(|w| w[1] >= w[0]) {
            bad.push(format!("run.ladder = {ladder:?} must be strictly decreasing"));
        }
        if self.output.snapshot_stride == Some(0) {
            bad.push("output.snapshot_stride must be >= 1".into());
        }
        if self.output.series_points == 0 {
            bad.push("output.series_points must be >= 1".into());
        }
        if g.spacing > 0.0 && g.hi > g.lo {
            for (name, p) in self.particles() {
                if p.width > 0.0 && (p.center - 4.0 * p.width < g.lo || p.center + 4.0 * p.width > g.hi) {
                    bad.push(format!("{name}: center ± 4 width must lie inside [grid.lo, grid.hi]"));
                }
            }
        }

        let mode = self.run.mode;
        let sep = |a: &PacketSpec, b: &PacketSpec| b.center - a.center;
        if mode == Mode::TwoBody && sep(&self.photon, &self.electron1) < ph.delta0 {
            bad.push("electron1.center must lie at least physics.delta0 right of photon.center".into());
        }
        if mode.is_three_body() {
            if sep(&self.electron1, &self.photon) < ph.delta0 {
                bad.push("photon.center must lie at least physics.delta0 right of electron1.center".into());
            }
            if sep(&self.photon, &self.electron2) < ph.delta0 {
                bad.push("electron2.center must lie at least physics.delta0 right of photon.center".into());
            }
        }
        let multiple = |t: f64| g.spacing > 0.0 && ((t / g.spacing) - (t / g.spacing).round()).abs() < 1e-9;
        if mode.is_three_body() && !multiple(self.run.t_final) {
            bad.push(format!("run.t_final = {} must be a multiple of grid.spacing", self.run.t_final));
        }
        let needs_lattice = |eps: f64| g.spacing > 0.0 && eps > 0.0 && g.spacing > eps / 2.0 + 1e-15;
        if matches!(mode, Mode::ThreeBodyEqualTime | Mode::ThreeBodyMultitime) {
            if self.run.epsilon <= 0.0 {
                bad.push("run.epsilon must be > 0 for three-body runs".into());
            } else if needs_lattice(self.run.epsilon) {
                bad.push(format!("grid.spacing must be <= run.epsilon / 2 = {}", self.run.epsilon / 2.0));
            }
        }
        if matches!(mode, Mode::Convergence | Mode::Verify) {
            if let Some(&last) = ladder.last() {
                if needs_lattice(last) {
                    bad.push(format!("grid.spacing must be <= half the smallest run.ladder entry ({})", last / 2.0));
                }
            }
        }
        if mode == Mode::ThreeBodyMultitime {
            match self.run.times {
                None => bad.push("run.times is required in mode three_body_multitime".into()),
                Some(ts) => {
                    if ts.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
                        bad.push(format!("run.times = {ts:?} must be finite and >= 0"));
                    } else if !multiple(ts.iter().cloned().fold(f64::INFINITY, f64::min)) {
                        bad.push("the smallest of run.times must be a multiple of grid.spacing".into());
                    }
                }
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    fn particles(&self) -> [(&'static str, &PacketSpec); 3] {
        [("photon", &self.photon), ("electron1", &self.electron1), ("electron2", &self.electron2)]
    }

    pub fn params(&self, epsilon: f64) -> PhysicalParams {
        let p = &self.physics;
        PhysicalParams { omega: p.omega, theta1: p.theta1, theta2: p.theta2, epsilon, delta0: p.delta0 }
    }

    pub fn two_body_data(&self) -> ProductData {
        ProductData { photon: self.photon.packet(), electron: self.electron1.packet(), delta0: self.physics.delta0 }
    }

    pub fn three_body_data(&self) -> ProductData3 {
        ProductData3 {
            photon: self.photon.packet(),
            e1: self.electron1.packet(),
            e2: self.electron2.packet(),
            delta0: self.physics.delta0,
        }
    }
}
