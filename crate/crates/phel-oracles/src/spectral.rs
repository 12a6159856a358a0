//! Exact periodic evolution of the 1+1D Dirac equation, mode by mode.

use crate::C64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Evolve periodic data on `n` equispaced nodes of a box of length `len` by
/// time `t`. Component 0 moves right, component 1 moves left; `omega`
/// couples them.
pub fn dirac_spectral(minus: &[C64], plus: &[C64], len: f64, omega: f64, t: f64) -> (Vec<C64>, Vec<C64>) {
    let n = minus.len();
    assert_eq!(n, plus.len());
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let mut a = minus.to_vec();
    let mut b = plus.to_vec();
    fwd.process(&mut a);
    fwd.process(&mut b);
    for j in 0..n {
        let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
        let k = 2.0 * PI * m / len;
        let e = (k * k + omega * omega).sqrt();
        let (c, s_over_e) = if e == 0.0 { (1.0, t) } else { ((e * t).cos(), (e * t).sin() / e) };
        let i = C64::new(0.0, 1.0);
        // exp(-iHt) with H = [[k, w], [w, -k]]
        let am = a[j];
        let bp = b[j];
        a[j] = am * c - i * s_over_e * (am * k + bp * omega);
        b[j] = bp * c - i * s_over_e * (am * omega - bp * k);
    }
    inv.process(&mut a);
    inv.process(&mut b);
    let scale = 1.0 / n as f64;
    (a.iter().map(|v| v * scale).collect(), b.iter().map(|v| v * scale).collect())
}

/// Exact periodic Klein–Gordon evolution `û(t) = f̂ cos Et + ĝ sin(Et)/E`.
pub fn kg_spectral(f: &[C64], g: &[C64], len: f64, omega: f64, t: f64) -> Vec<C64> {
    let n = f.len();
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(n);
    let inv = planner.plan_fft_inverse(n);
    let mut a = f.to_vec();
    let mut b = g.to_vec();
    fwd.process(&mut a);
    fwd.process(&mut b);
    for j in 0..n {
        let m = if j <= n / 2 { j as f64 } else { j as f64 - n as f64 };
        let k = 2.0 * PI * m / len;
        let e = (k * k + omega * omega).sqrt();
        let s_over_e = if e == 0.0 { t } else { (e * t).sin() / e };
        a[j] = a[j] * (e * t).cos() + b[j] * s_over_e;
    }
    inv.process(&mut a);
    a.iter().map(|v| v / n as f64).collect()
}
