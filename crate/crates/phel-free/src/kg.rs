use phel_numerics::{bessel_j0, j1_over_x, panels, simpson, Error, Result, SampledField1D, C64};

/// Klein–Gordon solution `(∂t² − ∂s² + ω²)u = 0` at `(t, s)` from Cauchy
/// data `u(0,·) = f`, `∂t u(0,·) = g`:
///
/// `u = ½[f(s+t) + f(s−t)] + ½∫ J₀(ωr) g dσ − (ω²t/2)∫ J₁(ωr)/(ωr) f dσ`,
/// `r = √(t² − (s−σ)²)`, `σ ∈ [s−t, s+t]`.
pub fn kg_cauchy(f: &SampledField1D, g: &SampledField1D, omega: f64, t: f64, s: f64) -> Result<C64> {
    if !t.is_finite() || t < 0.0 || !s.is_finite() {
        return Err(Error::domain("kg_cauchy", format!("point ({t}, {s}) needs finite s and t >= 0")));
    }
    if !omega.is_finite() || omega < 0.0 {
        return Err(Error::domain("kg_cauchy", format!("omega {omega} must be >= 0")));
    }
    for field in [f, g] {
        let covered = field.grid.contains(s - t) && field.grid.contains(s + t);
        if !covered && !field.compact_support {
            return Err(Error::domain(
                "kg_cauchy",
                format!("dependence interval [{}, {}] leaves the sampled data", s - t, s + t),
            ));
        }
    }
    let mut u = (f.eval_or_zero(s + t) + f.eval_or_zero(s - t)) * 0.5;
    if t == 0.0 {
        return Ok(u);
    }
    let h = f.grid.spacing().min(g.grid.spacing());
    let integrand = |sigma: f64| {
        let d = s - sigma;
        let r = (t * t - d * d).max(0.0).sqrt();
        let x = omega * r;
        g.eval_or_zero(sigma) * (0.5 * bessel_j0(x)) - f.eval_or_zero(sigma) * (0.5 * omega * omega * t * j1_over_x(x))
    };
    u += simpson(integrand, s - t, s + t, panels(s - t, s + t, h));
    Ok(u)
}
