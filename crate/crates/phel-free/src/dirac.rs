//! Free Dirac evolution by the Bessel-kernel representation.
//!
//! Component ς obeys `(∂t − ς∂s)ψ_ς + iωψ_ς̄ = 0`. With `p = t − ς(s−σ)`,
//! `q = t + ς(s−σ)` and `x = ω√(pq)` the solution is
//!
//! `ψ_ς(t,s) = ψ̊_ς(s+ςt) − ∫ [ (ω²/2) p J₁(x)/x ψ̊_ς(σ) + (iω/2) J₀(x) ψ̊_ς̄(σ) ] dσ`
//!
//! over `σ ∈ [s−t, s+t]`. Both integrands are smooth on the closed interval.

use crate::ElectronSpinor;
use phel_numerics::{bessel_j0, j1_over_x, panels, simpson, simpson_weights, Error, Result, SampledField1D, C64, I};
use rayon::prelude::*;

fn kernels(omega: f64, t: f64, sigma_minus_s: f64, sign: f64) -> (f64, C64) {
    let p = t + sign * sigma_minus_s;
    let q = t - sign * sigma_minus_s;
    let x = omega * (p * q).max(0.0).sqrt();
    let k1 = -0.5 * omega * omega * p * j1_over_x(x);
    let k0 = -0.5 * I * omega * bessel_j0(x);
    (k1, k0)
}

fn check_time(op: &'static str, t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(op, format!("time {t} must be finite and >= 0")));
    }
    Ok(())
}

/// Solution at one point for data given as a function of position
/// (`[ψ̊₋, ψ̊₊]`). `h` bounds the quadrature panel width.
pub fn dirac_point<F>(data: F, omega: f64, t: f64, s: f64, h: f64) -> Result<[C64; 2]>
where
    F: Fn(f64) -> [C64; 2],
{
    check_time("dirac_point", t)?;
    if !(h > 0.0) {
        return Err(Error::domain("dirac_point", format!("quadrature spacing {h} must be > 0")));
    }
    Ok(dirac_point_unchecked(&data, omega, t, s, h))
}

pub(crate) fn dirac_point_unchecked<F>(data: &F, omega: f64, t: f64, s: f64, h: f64) -> [C64; 2]
where
    F: Fn(f64) -> [C64; 2] + ?Sized,
{
    let mut out = [data(s - t)[0], data(s + t)[1]];
    if t == 0.0 || omega == 0.0 {
        return out;
    }
    let n = panels(s - t, s + t, h);
    let integral: [C64; 2] = {
        let f = |sigma: f64| {
            let d = data(sigma);
            let (k1m, k0) = kernels(omega, t, sigma - s, -1.0);
            let (k1p, _) = kernels(omega, t, sigma - s, 1.0);
            Pair([d[0] * k1m + d[1] * k0, d[1] * k1p + d[0] * k0])
        };
        simpson(f, s - t, s + t, n).0
    };
    out[0] += integral[0];
    out[1] += integral[1];
    out
}

/// [`dirac_point`] for `M / 2` independent spinors at once: entries
/// `2j` and `2j + 1` of the data are the `−` and `+` components of spinor
/// `j`. Shares the kernel evaluations between spinors.
pub fn dirac_point_channels<F, const M: usize>(data: F, omega: f64, t: f64, s: f64, h: f64) -> Result<[C64; M]>
where
    F: Fn(f64) -> [C64; M],
{
    check_time("dirac_point_channels", t)?;
    if !(h > 0.0) || M % 2 != 0 {
        return Err(Error::domain("dirac_point_channels", format!("need h > 0 and an even channel count (h {h}, M {M})")));
    }
    let (lo, hi) = (data(s - t), data(s + t));
    let mut out: [C64; M] = std::array::from_fn(|k| if k % 2 == 0 { lo[k] } else { hi[k] });
    if t == 0.0 || omega == 0.0 {
        return Ok(out);
    }
    let f = |sigma: f64| {
        let d = data(sigma);
        let (k1m, k0) = kernels(omega, t, sigma - s, -1.0);
        let (k1p, _) = kernels(omega, t, sigma - s, 1.0);
        Channels::<M>(std::array::from_fn(|k| {
            if k % 2 == 0 {
                d[k] * k1m + d[k + 1] * k0
            } else {
                d[k] * k1p + d[k - 1] * k0
            }
        }))
    };
    let integral = simpson(f, s - t, s + t, panels(s - t, s + t, h)).0;
    for k in 0..M {
        out[k] += integral[k];
    }
    Ok(out)
}

#[derive(Clone, Copy)]
struct Channels<const M: usize>([C64; M]);

impl<const M: usize> Default for Channels<M> {
    fn default() -> Self {
        Channels([C64::new(0.0, 0.0); M])
    }
}

impl<const M: usize> std::ops::Add for Channels<M> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Channels(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }
}

impl<const M: usize> std::ops::Mul<f64> for Channels<M> {
    type Output = Self;
    fn mul(self, w: f64) -> Self {
        Channels(self.0.map(|v| v * w))
    }
}

#[derive(Clone, Copy, Default)]
struct Pair([C64; 2]);

impl std::ops::Add for Pair {
    type Output = Pair;
    fn add(self, o: Pair) -> Pair {
        Pair([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl std::ops::Mul<f64> for Pair {
    type Output = Pair;
    fn mul(self, w: f64) -> Pair {
        Pair([self.0[0] * w, self.0[1] * w])
    }
}

/// Quadrature stencil for a time step that is a whole number `m` of grid
/// spacings: tap `k` multiplies the data at offset `k − m` nodes.
#[derive(Debug, Clone)]
pub struct DiracKernel {
    pub steps: usize,
    /// Same-component taps, indexed by sign then offset.
    pub same: [Vec<f64>; 2],
    /// Cross-component taps, shared by both signs.
    pub cross: Vec<C64>,
    coupled: bool,
}

impl DiracKernel {
    pub fn new(omega: f64, h: f64, steps: usize) -> Self {
        let t = steps as f64 * h;
        let w = simpson_weights(2 * steps, h);
        let mut same = [vec![0.0; 2 * steps + 1], vec![0.0; 2 * steps + 1]];
        let mut cross = vec![C64::new(0.0, 0.0); 2 * steps + 1];
        if steps > 0 && omega != 0.0 {
            for k in 0..=2 * steps {
                let off = (k as f64 - steps as f64) * h;
                let (k1m, k0) = kernels(omega, t, off, -1.0);
                let (k1p, _) = kernels(omega, t, off, 1.0);
                same[0][k] = k1m * w[k];
                same[1][k] = k1p * w[k];
                cross[k] = k0 * w[k];
            }
        }
        Self { steps, same, cross, coupled: steps > 0 && omega != 0.0 }
    }

    /// Apply to node-sampled data (zero outside `0..len`); returns both
    /// evolved components at node `i`.
    pub fn apply_at(&self, minus: &[C64], plus: &[C64], i: usize) -> [C64; 2] {
        let n = minus.len() as isize;
        let m = self.steps as isize;
        let at = |v: &[C64], j: isize| if j >= 0 && j < n { v[j as usize] } else { C64::new(0.0, 0.0) };
        let i = i as isize;
        let mut out = [at(minus, i - m), at(plus, i + m)];
        if !self.coupled {
            return out;
        }
        let lo = (i - m).max(0);
        let hi = (i + m).min(n - 1);
        for j in lo..=hi {
            let k = (j - i + m) as usize;
            let (a, b) = (minus[j as usize], plus[j as usize]);
            out[0] += a * self.same[0][k] + b * self.cross[k];
            out[1] += b * self.same[1][k] + a * self.cross[k];
        }
        out
    }
}

/// Evolve a spinor by time `t` on its own grid. Data are taken as zero
/// outside the grid. Whole multiples of the spacing use a precomputed
/// stencil; other times interpolate the data.
pub fn dirac_propagate(spinor: &ElectronSpinor, omega: f64, t: f64) -> Result<ElectronSpinor> {
    check_time("dirac_propagate", t)?;
    if !omega.is_finite() || omega < 0.0 {
        return Err(Error::domain("dirac_propagate", format!("omega {omega} must be >= 0")));
    }
    let grid = spinor.grid();
    let h = grid.spacing();
    let n = grid.count();
    let m = t / h;
    let values: Vec<[C64; 2]> = if (m - m.round()).abs() < 1e-9 * m.max(1.0) {
        let kernel = DiracKernel::new(omega, h, m.round() as usize);
        (0..n)
            .into_par_iter()
            .map(|i| kernel.apply_at(&spinor.minus.values, &spinor.plus.values, i))
            .collect()
    } else {
        let data = |s: f64| spinor.eval(s);
        (0..n)
            .into_par_iter()
            .map(|i| dirac_point_unchecked(&data, omega, t, grid.point(i), h))
            .collect()
    };
    let compact = spinor.minus.compact_support;
    Ok(ElectronSpinor {
        minus: SampledField1D { grid, values: values.iter().map(|v| v[0]).collect(), compact_support: compact },
        plus: SampledField1D { grid, values: values.iter().map(|v| v[1]).collect(), compact_support: compact },
    })
}
