use crate::PhotonBispinor;
use phel_numerics::{panels, simpson, Error, Result, SampledField1D, Sign, C64};

/// Free photon: `χ₋(t,s) = χ̊₋(s−t)`, `χ₊(t,s) = χ̊₊(s+t)`, on the input grid.
pub fn photon_transport(photon: &PhotonBispinor, t: f64) -> Result<PhotonBispinor> {
    if !t.is_finite() {
        return Err(Error::domain("photon_transport", format!("time {t} must be finite")));
    }
    let shift = |field: &SampledField1D, d: f64| SampledField1D {
        grid: field.grid,
        values: field.grid.points().map(|s| field.eval_or_zero(s + d)).collect(),
        compact_support: field.compact_support,
    };
    Ok(PhotonBispinor { minus: shift(&photon.minus, -t), plus: shift(&photon.plus, t) })
}

/// Solution of `(∂t − ς∂s)φ = src(t, s)` with `φ(0,·) = initial`, by
/// integrating the source along the characteristic `s + ς(t − τ)`.
pub fn sourced_transport<F, S>(sign: Sign, t: f64, s: f64, initial: F, source: S, h: f64) -> Result<C64>
where
    F: Fn(f64) -> C64,
    S: Fn(f64, f64) -> C64,
{
    if !t.is_finite() || t < 0.0 || !(h > 0.0) {
        return Err(Error::domain("sourced_transport", format!("need t >= 0 and h > 0, got t = {t}, h = {h}")));
    }
    let c = sign.value();
    let base = initial(s + c * t);
    if t == 0.0 {
        return Ok(base);
    }
    Ok(base + simpson(|tau| source(tau, s + c * (t - tau)), 0.0, t, panels(0.0, t, h)))
}
