use phel_numerics::{smoothstep5, C64};

/// Gaussian wave packet `amp_ς · exp(−a (s−c)²) · exp(i k s)` for both
/// chiral components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Packet {
    pub center: f64,
    /// Inverse squared width `a`.
    pub sharpness: f64,
    pub momentum: f64,
    /// Amplitudes of the `−` and `+` components.
    pub amplitudes: [C64; 2],
}

impl Packet {
    pub fn eval(&self, s: f64) -> [C64; 2] {
        let d = s - self.center;
        let g = C64::from_polar((-self.sharpness * d * d).exp(), self.momentum * s);
        [self.amplitudes[0] * g, self.amplitudes[1] * g]
    }
}

/// Smooth cutoff that vanishes within `delta0` of a wall and equals one
/// beyond `2 delta0`.
pub fn wall_mask(distance: f64, delta0: f64) -> f64 {
    smoothstep5((distance - delta0) / delta0)
}
