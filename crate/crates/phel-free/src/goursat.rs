//! Characteristic (Goursat) problem for `(∂t² − ∂s² + ω²)u = 0` in the
//! forward cone `|s| < t`, with `u(b, b) = F(b)` on the right-moving edge
//! and `u(c, −c) = G(c)` on the left-moving edge. For `F(0) = G(0)` the
//! solution is `goursat_right(F) + goursat_left(G)`.

use phel_numerics::{bessel_j0, j1_over_x, panels, simpson, Error, Result, SampledField1D, C64};

fn check(op: &'static str, omega: f64, t: f64, s: f64) -> Result<()> {
    if !t.is_finite() || !s.is_finite() || s.abs() > t * (1.0 + 1e-12) + 1e-14 {
        return Err(Error::domain(op, format!("point ({t}, {s}) must satisfy |s| <= t")));
    }
    if !omega.is_finite() || omega < 0.0 {
        return Err(Error::domain(op, format!("omega {omega} must be >= 0")));
    }
    Ok(())
}

/// Contribution of the right-edge data `F`:
/// `F(u₀) − ½F(0)J₀(ω√(t²−s²)) − ω²(t−s)∫₀^{u₀} J₁(z)/z F(b) db`,
/// `u₀ = (t+s)/2`, `z = ω√((t+s−2b)(t−s))`.
pub fn goursat_right_fn<F: Fn(f64) -> C64>(f: F, omega: f64, t: f64, s: f64, h: f64) -> Result<C64> {
    check("goursat_right", omega, t, s)?;
    Ok(edge_term(&f, omega, t, s, h))
}

/// Contribution of the left-edge data `G`; mirror image of
/// [`goursat_right_fn`] under `s → −s`.
pub fn goursat_left_fn<G: Fn(f64) -> C64>(g: G, omega: f64, t: f64, s: f64, h: f64) -> Result<C64> {
    check("goursat_left", omega, t, s)?;
    Ok(edge_term(&g, omega, t, -s, h))
}

pub(crate) fn edge_term<F: Fn(f64) -> C64 + ?Sized>(f: &F, omega: f64, t: f64, s: f64, h: f64) -> C64 {
    let s = s.clamp(-t, t);
    let u0 = 0.5 * (t + s);
    let tm = t - s;
    let r0 = omega * (t * t - s * s).max(0.0).sqrt();
    let mut v = f(u0) - f(0.0) * (0.5 * bessel_j0(r0));
    if omega != 0.0 && u0 > 0.0 && tm > 0.0 {
        let w2 = omega * omega * tm;
        let integrand = |b: f64| f(b) * (w2 * j1_over_x(omega * ((t + s - 2.0 * b).max(0.0) * tm).sqrt()));
        v -= simpson(integrand, 0.0, u0, panels(0.0, u0, h));
    }
    v
}

fn covers(field: &SampledField1D, hi: f64) -> bool {
    field.compact_support || (field.grid.contains(0.0) && field.grid.contains(hi))
}

/// [`goursat_right_fn`] for data sampled on a grid covering `[0, (t+s)/2]`.
pub fn goursat_right(f: &SampledField1D, omega: f64, t: f64, s: f64) -> Result<C64> {
    check("goursat_right", omega, t, s)?;
    if !covers(f, 0.5 * (t + s)) {
        return Err(Error::domain("goursat_right", "edge data do not cover [0, (t+s)/2]"));
    }
    Ok(edge_term(&|b| f.eval_or_zero(b), omega, t, s, f.grid.spacing()))
}

/// [`goursat_left_fn`] for data sampled on a grid covering `[0, (t−s)/2]`.
pub fn goursat_left(g: &SampledField1D, omega: f64, t: f64, s: f64) -> Result<C64> {
    check("goursat_left", omega, t, s)?;
    if !covers(g, 0.5 * (t - s)) {
        return Err(Error::domain("goursat_left", "edge data do not cover [0, (t−s)/2]"));
    }
    Ok(edge_term(&|c| g.eval_or_zero(c), omega, t, -s, g.grid.spacing()))
}
