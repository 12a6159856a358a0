//! Quadrature helpers.

use crate::field::eval_slice;
use crate::{Error, Grid1D, Result, C64};
use rayon::prelude::*;
use std::ops::{Add, Mul};

/// Composite Simpson rule with `n` intervals, rounded up to an even count.
pub fn simpson<T, F>(f: F, a: f64, b: f64, n: usize) -> T
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let n = (n.max(2) + 1) & !1;
    if a == b {
        return T::default();
    }
    let h = (b - a) / n as f64;
    let mut odd = T::default();
    let mut even = T::default();
    for k in 1..n {
        let v = f(a + k as f64 * h);
        if k % 2 == 1 {
            odd = odd + v;
        } else {
            even = even + v;
        }
    }
    (f(a) + f(b) + odd * 4.0 + even * 2.0) * (h / 3.0)
}

/// Number of Simpson intervals so that the panel width does not exceed `h`.
pub fn panels(a: f64, b: f64, h: f64) -> usize {
    let n = ((b - a).abs() / h - 1e-9).ceil().max(2.0) as usize;
    (n + 1) & !1
}

/// Simpson weights for `m` intervals of width `h` (3/8 rule on the last three
/// intervals when `m` is odd, trapezoid when `m == 1`).
pub fn simpson_weights(m: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; m + 1];
    if m == 0 {
        return w;
    }
    if m == 1 {
        w[0] = h / 2.0;
        w[1] = h / 2.0;
        return w;
    }
    let even_part = if m % 2 == 0 { m } else { m - 3 };
    for k in (0..even_part).step_by(2) {
        w[k] += h / 3.0;
        w[k + 1] += 4.0 * h / 3.0;
        w[k + 2] += h / 3.0;
    }
    if m % 2 == 1 {
        let k = even_part;
        w[k] += 3.0 * h / 8.0;
        w[k + 1] += 9.0 * h / 8.0;
        w[k + 2] += 9.0 * h / 8.0;
        w[k + 3] += 3.0 * h / 8.0;
    }
    w
}

/// Integral over `[a, b]` of data sampled on `grid`: composite Simpson over
/// the nodes inside, interpolated Simpson panels on the fractional end cells.
pub fn integrate(grid: &Grid1D, values: &[C64], a: f64, b: f64) -> Result<C64> {
    if values.len() != grid.count() {
        return Err(Error::contract("integrate", format!("{} values for {} nodes", values.len(), grid.count())));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::domain("integrate", "non-finite limits"));
    }
    if !grid.contains(a) || !grid.contains(b) {
        return Err(Error::domain(
            "integrate",
            format!("[{a}, {b}] not inside [{}, {}]", grid.origin(), grid.last()),
        ));
    }
    if b < a {
        return integrate(grid, values, b, a).map(|v| -v);
    }
    Ok(integrate_sorted(grid, values, a, b))
}

fn integrate_sorted(grid: &Grid1D, values: &[C64], a: f64, b: f64) -> C64 {
    let h = grid.spacing();
    let ua = grid.index_coord(a);
    let ub = grid.index_coord(b);
    let tol = 1e-9;
    let ia = ((ua - tol).ceil().max(0.0)) as usize;
    let ib = ((ub + tol).floor().min((grid.count() - 1) as f64)) as usize;
    let end_cell = |lo: f64, hi: f64| -> C64 {
        if hi - lo <= 0.0 {
            return C64::new(0.0, 0.0);
        }
        let m = 0.5 * (lo + hi);
        (eval_slice(grid, values, lo) + eval_slice(grid, values, m) * 4.0 + eval_slice(grid, values, hi))
            * ((hi - lo) / 6.0)
    };
    if ia + 1 >= ib {
        return end_cell(a, b);
    }
    let m = ib - ia;
    let w = simpson_weights(m, h);
    let mut acc = C64::new(0.0, 0.0);
    for (k, wk) in w.iter().enumerate() {
        acc += values[ia + k] * *wk;
    }
    let xa = grid.point(ia);
    let xb = grid.point(ib);
    acc + end_cell(a, xa.max(a)) + end_cell(xb.min(b), b)
}

/// Sum of `f(i)` for `i < n`, reduced in fixed-size chunks so the result is
/// bit-identical for every thread count.
pub fn ordered_sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    const CHUNK: usize = 4096;
    let chunks = n.div_ceil(CHUNK);
    let partial: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            (lo..hi).map(&f).sum::<f64>()
        })
        .collect();
    partial.iter().sum()
}

/// Quintic smoothstep `6u⁵ − 15u⁴ + 10u³` clamped to `[0, 1]`.
pub fn smoothstep5(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    u * u * u * (10.0 + u * (-15.0 + 6.0 * u))
}
