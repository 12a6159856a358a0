//! Bessel functions of the first kind, orders 0 and 1.
//!
//! Power series below `CROSSOVER`, Hankel large-argument expansion above it,
//! truncated at its smallest term.

use crate::{Error, Result};
use std::f64::consts::{FRAC_PI_4, PI};

const CROSSOVER: f64 = 11.0;

/// `J_n(x)` for `n` in {0, 1} and `x >= 0`.
pub fn bessel_j(n: u32, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain("bessel_j", format!("x = {x} must be finite and non-negative")));
    }
    match n {
        0 => Ok(bessel_j0(x)),
        1 => Ok(bessel_j1(x)),
        _ => Err(Error::domain("bessel_j", format!("order {n} not supported"))),
    }
}

/// `J_0(x)`; even in `x`.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < CROSSOVER {
        series(0, x)
    } else {
        hankel(0, x)
    }
}

/// `J_1(x)`; odd in `x`.
pub fn bessel_j1(x: f64) -> f64 {
    let ax = x.abs();
    let v = if ax < CROSSOVER { series(1, ax) } else { hankel(1, ax) };
    if x < 0.0 {
        -v
    } else {
        v
    }
}

/// `J_1(x)/x`, smooth through `x = 0` where it equals 1/2.
pub fn j1_over_x(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-3 {
        let y = ax * ax / 4.0;
        0.5 * (1.0 - y / 2.0 + y * y / 12.0)
    } else if ax < CROSSOVER {
        // series of J_1(x)/x directly, no cancellation near the origin
        let q = -ax * ax / 4.0;
        let mut term = 0.5;
        let mut sum = term;
        let mut k = 0.0;
        loop {
            k += 1.0;
            term *= q / (k * (k + 1.0));
            sum += term;
            if term.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        sum
    } else {
        hankel(1, ax) / ax
    }
}

fn series(n: u32, x: f64) -> f64 {
    let q = -x * x / 4.0;
    let mut term = if n == 0 { 1.0 } else { x / 2.0 };
    let mut sum = term;
    let nf = n as f64;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= q / (k * (k + nf));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-17) && k > 3.0 {
            break;
        }
    }
    sum
}

fn hankel(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a: f64 = 1.0;
    let mut prev = f64::INFINITY;
    let mut pow: f64 = 1.0;
    for k in 0..200u32 {
        let val = a / pow;
        if k > 2 && (val.abs() > prev || val.abs() < 1e-18) {
            break;
        }
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * val;
        } else {
            q += sign * val;
        }
        prev = val.abs();
        let kn = (k + 1) as f64;
        let odd = 2.0 * kn - 1.0;
        a *= (mu - odd * odd) / (kn * 8.0);
        pow *= x;
    }
    let chi = x - (2 * n + 1) as f64 * FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}
