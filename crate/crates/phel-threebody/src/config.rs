use phel_numerics::{Error, Result, Sign};

/// Photon at `(t_ph, s_ph)` between electron 1 at `(t_e1, s_e1)` and
/// electron 2 at `(t_e2, s_e2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeBodyConfig {
    pub t_ph: f64,
    pub s_ph: f64,
    pub t_e1: f64,
    pub s_e1: f64,
    pub t_e2: f64,
    pub s_e2: f64,
}

impl ThreeBodyConfig {
    /// All three particles at time `t`.
    pub fn equal_time(t: f64, s_ph: f64, s_e1: f64, s_e2: f64) -> Self {
        Self { t_ph: t, s_ph, t_e1: t, s_e1, t_e2: t, s_e2 }
    }

    /// Same positions with every time reduced by `dt`.
    pub fn shifted(&self, dt: f64) -> Self {
        Self { t_ph: self.t_ph - dt, t_e1: self.t_e1 - dt, t_e2: self.t_e2 - dt, ..*self }
    }

    pub fn min_time(&self) -> f64 {
        self.t_ph.min(self.t_e1).min(self.t_e2)
    }

    /// Whether electron 1's backward cone reaches the photon's.
    pub fn left_near(&self) -> bool {
        self.s_e1 + self.t_e1 > self.s_ph - self.t_ph
    }

    /// Whether electron 2's backward cone reaches the photon's.
    pub fn right_near(&self) -> bool {
        self.s_ph + self.t_ph > self.s_e2 - self.t_e2
    }

    /// Whether the electrons' backward cones cross.
    pub fn cones_cross(&self) -> bool {
        self.s_e2 - self.t_e2 < self.s_e1 + self.t_e1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    Free,
    /// Only electron 1 is near the photon.
    Compton1,
    /// Only electron 2 is near the photon.
    Compton2,
    /// Both electrons are near the photon, their own cones are disjoint.
    Compton3,
    Coulomb,
}

/// Storage index of component `(ς₀, ς₁, ς₂)`.
pub fn comp3(photon: Sign, e1: Sign, e2: Sign) -> usize {
    4 * photon.index() + 2 * e1.index() + e2.index()
}

/// Signs of the component stored at index `k`.
pub fn signs3(k: usize) -> [Sign; 3] {
    [Sign::from_index(k >> 2 & 1), Sign::from_index(k >> 1 & 1), Sign::from_index(k & 1)]
}

/// Rejects configurations outside the ordered spacelike set.
pub fn check_config(op: &'static str, c: &ThreeBodyConfig) -> Result<()> {
    let vals = [c.t_ph, c.s_ph, c.t_e1, c.s_e1, c.t_e2, c.s_e2];
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain(op, "non-finite coordinate"));
    }
    if c.t_ph < 0.0 || c.t_e1 < 0.0 || c.t_e2 < 0.0 {
        return Err(Error::domain(op, format!("times must be >= 0 in {c:?}")));
    }
    let left = c.s_ph - c.s_e1;
    let right = c.s_e2 - c.s_ph;
    if !(left > 0.0 && right > 0.0) || (c.t_ph - c.t_e1).abs() >= left || (c.t_ph - c.t_e2).abs() >= right {
        return Err(Error::domain(op, format!("{c:?} is not an ordered spacelike configuration")));
    }
    Ok(())
}

/// Region of a configuration. Electron cones crossing
/// (`s_e2 − t_e2 < s_e1 + t_e1`) means Coulomb.
pub fn classify_three_body(c: &ThreeBodyConfig) -> Result<RegionLabel> {
    check_config("classify_three_body", c)?;
    Ok(if c.cones_cross() {
        RegionLabel::Coulomb
    } else {
        match (c.left_near(), c.right_near()) {
            (false, false) => RegionLabel::Free,
            (true, false) => RegionLabel::Compton1,
            (false, true) => RegionLabel::Compton2,
            (true, true) => RegionLabel::Compton3,
        }
    })
}

/// Largest number of bounce diagrams kept at cutoff `epsilon` up to time
/// `t`: `⌈1 + 2t/ε⌉`.
pub fn truncation_count(t: f64, epsilon: f64) -> Result<u64> {
    if !(t >= 0.0 && t.is_finite()) || !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::domain("truncation_count", format!("need t >= 0 and epsilon > 0 (t {t}, epsilon {epsilon})")));
    }
    let n = 1.0 + 2.0 * t / epsilon;
    // absorb roundoff such as 2·0.3/0.1 = 6.000000000000001
    let r = n.round();
    Ok(if (n - r).abs() <= 1e-9 * r.max(1.0) { r as u64 } else { n.ceil() as u64 })
}
