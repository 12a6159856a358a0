#![allow(dead_code)]

use phel_free::Packet;
use phel_numerics::{PhysicalParams, C64};
use phel_threebody::ProductData3;

pub fn packet(center: f64, sharpness: f64, momentum: f64, amps: [(f64, f64); 2]) -> Packet {
    Packet {
        center,
        sharpness,
        momentum,
        amplitudes: [C64::new(amps[0].0, amps[0].1), C64::new(amps[1].0, amps[1].1)],
    }
}

/// Photon in the middle, electrons on both sides, all components present.
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
