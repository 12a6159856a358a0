use crate::{comp3, signs3};
use phel_free::{wall_mask, Packet};
use phel_numerics::C64;

/// Initial data `ψ̊(s_ph, s_e1, s_e2)` on `s_e1 < s_ph < s_e2`;
/// implementations return zero elsewhere.
pub trait ThreeBodyInitial: Sync {
    fn eval(&self, s_ph: f64, s_e1: f64, s_e2: f64) -> [C64; 8];
}

impl<F> ThreeBodyInitial for F
where
    F: Fn(f64, f64, f64) -> [C64; 8] + Sync,
{
    fn eval(&self, s_ph: f64, s_e1: f64, s_e2: f64) -> [C64; 8] {
        self(s_ph, s_e1, s_e2)
    }
}

/// Product of three packets, cut off smoothly near both contact walls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductData3 {
    pub photon: Packet,
    pub e1: Packet,
    pub e2: Packet,
    /// Cutoff distance; zero disables the cutoff.
    pub delta0: f64,
}

impl ThreeBodyInitial for ProductData3 {
    fn eval(&self, s_ph: f64, s_e1: f64, s_e2: f64) -> [C64; 8] {
        let (l, r) = (s_ph - s_e1, s_e2 - s_ph);
        if l <= 0.0 || r <= 0.0 {
            return [C64::new(0.0, 0.0); 8];
        }
        let mask = if self.delta0 > 0.0 { wall_mask(l, self.delta0) * wall_mask(r, self.delta0) } else { 1.0 };
        let (a, b, c) = (self.photon.eval(s_ph), self.e1.eval(s_e1), self.e2.eval(s_e2));
        std::array::from_fn(|k| {
            let [x, y, z] = signs3(k);
            a[x.index()] * b[y.index()] * c[z.index()] * mask
        })
    }
}

/// Space reflection combined with exchange of the electrons:
/// `(PXψ)_{ς₀ς₁ς₂}(s_ph, s_e1, s_e2) = ψ_{ς̄₀ς̄₂ς̄₁}(−s_ph, −s_e2, −s_e1)`.
/// Maps the ordered sector to itself and swaps the two contact walls.
pub fn exchange_parity(v: &[C64; 8]) -> [C64; 8] {
    std::array::from_fn(|k| {
        let [x, y, z] = signs3(k);
        v[comp3(x.flip(), z.flip(), y.flip())]
    })
}

/// Data composed with [`exchange_parity`].
pub struct Mirrored<D>(pub D);

impl<D: ThreeBodyInitial> ThreeBodyInitial for Mirrored<D> {
    fn eval(&self, s_ph: f64, s_e1: f64, s_e2: f64) -> [C64; 8] {
        exchange_parity(&self.0.eval(-s_ph, -s_e2, -s_e1))
    }
}

/// `(ψ̊ − PXψ̊)/√2`, odd under exchange with reflection. With equal
/// contact phases the evolution keeps it odd.
pub struct Antisymmetrized<D>(pub D);

impl<D: ThreeBodyInitial> ThreeBodyInitial for Antisymmetrized<D> {
    fn eval(&self, s_ph: f64, s_e1: f64, s_e2: f64) -> [C64; 8] {
        let a = self.0.eval(s_ph, s_e1, s_e2);
        let b = exchange_parity(&self.0.eval(-s_ph, -s_e2, -s_e1));
        std::array::from_fn(|k| (a[k] - b[k]) * std::f64::consts::FRAC_1_SQRT_2)
    }
}
