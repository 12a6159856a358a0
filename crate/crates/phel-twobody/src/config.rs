use crate::{Error, Result};
use phel_numerics::Sign;

/// Photon at `(t_ph, s_ph)`, electron at `(t_e, s_e)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBodyConfig {
    pub t_ph: f64,
    pub s_ph: f64,
    pub t_e: f64,
    pub s_e: f64,
}

/// Whether the photon's past light cone has reached the electron's.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Far,
    Near,
}

/// Storage index of component `(ς₀, ς₁)`.
pub fn comp(photon: Sign, electron: Sign) -> usize {
    2 * photon.index() + electron.index()
}

/// Far iff `s_ph + t_ph ≤ s_e − t_e`. Requires an ordered, spacelike pair
/// with non-negative times.
pub fn classify(c: &TwoBodyConfig) -> Result<Region> {
    let vals = [c.t_ph, c.s_ph, c.t_e, c.s_e];
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(phel_numerics::Error::domain("classify", "non-finite coordinate").into());
    }
    if c.t_ph < 0.0 || c.t_e < 0.0 {
        return Err(phel_numerics::Error::domain("classify", "times must be >= 0").into());
    }
    let gap = c.s_e - c.s_ph;
    if !(gap > 0.0) || (c.t_ph - c.t_e).abs() >= gap {
        return Err(Error::Numerics(phel_numerics::Error::domain(
            "classify",
            format!("configuration {c:?} is not an ordered spacelike pair"),
        )));
    }
    Ok(if c.s_ph + c.t_ph <= c.s_e - c.t_e { Region::Far } else { Region::Near })
}
