#![allow(dead_code)]

use phel_free::Packet;
use phel_numerics::{PhysicalParams, C64};
use phel_threebody::ProductData3;
use phel_verify::{Profile, WedgeQuadrature};
use rand::Rng;
use std::sync::Arc;

pub fn packet(center: f64, sharpness: f64, momentum: f64, amps: [(f64, f64); 2]) -> Packet {
    Packet {
        center,
        sharpness,
        momentum,
        amplitudes: [C64::new(amps[0].0, amps[0].1), C64::new(amps[1].0, amps[1].1)],
    }
}

/// Photon between two electrons, every component present.
pub fn squeezed(gap: f64, sharpness: f64) -> ProductData3 {
    ProductData3 {
        photon: packet(0.0, sharpness, 2.0, [(1.0, 0.0), (0.6, 0.5)]),
        e1: packet(-gap, sharpness, -1.0, [(0.8, 0.2), (0.3, -0.4)]),
        e2: packet(gap, sharpness, 1.5, [(0.5, -0.3), (0.9, 0.1)]),
        delta0: 0.1,
    }
}

pub fn params(omega: f64, theta1: f64, theta2: f64, epsilon: f64) -> PhysicalParams {
    PhysicalParams { omega, theta1, theta2, epsilon, delta0: 0.1 }
}

/// `amp · exp(−a(x−x₀)² − b(y−y₀)² + ikx)` on the half-plane.
pub fn gaussian(amp: C64, x0: f64, a: f64, y0: f64, b: f64, k: f64) -> Profile {
    Arc::new(move |x, y| amp * C64::from_polar((-a * (x - x0).powi(2) - b * (y - y0).powi(2)).exp(), k * x))
}

pub fn zero() -> Profile {
    Arc::new(|_, _| C64::new(0.0, 0.0))
}

/// Gaussian profile with random amplitude, centre and momentum, centred at
/// height `y0 ∈ [lo, hi]`.
pub fn random_profile<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> Profile {
    let amp = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    gaussian(amp, rng.gen_range(-0.5..0.5), rng.gen_range(2.0..5.0), rng.gen_range(lo..hi), rng.gen_range(8.0..20.0), rng.gen_range(-2.0..2.0))
}

/// Quadrature sized for profiles of unit width near the origin.
pub fn quadrature() -> WedgeQuadrature {
    WedgeQuadrature { p_lo: -12.0, p_hi: 12.0, p_step: 0.2, extent: 9.0, panel: 0.5, order: 8 }
}
