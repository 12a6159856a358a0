//! Action of `O(1,1)` on component values. Under a boost of rapidity `a`
//! (`t' = t cosh a + s sinh a`, `s' = s cosh a + t sinh a`) each `ς = ∓`
//! index of an electron scales by `e^{±a/2}` and of the photon by `e^{±a}`.

use phel_numerics::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transformation {
    Boost(f64),
    Parity,
    TimeReversal,
}

fn apply<const N: usize>(psi: &[C64; N], tr: Transformation, weight: impl Fn(usize) -> f64) -> [C64; N] {
    match tr {
        Transformation::Boost(a) => std::array::from_fn(|k| psi[k] * (-a * weight(k)).exp()),
        Transformation::Parity => std::array::from_fn(|k| psi[N - 1 - k]),
        Transformation::TimeReversal => std::array::from_fn(|k| psi[N - 1 - k].conj()),
    }
}

fn sigma(bit: usize) -> f64 {
    if bit == 0 {
        -1.0
    } else {
        1.0
    }
}

/// Electron spinor `(ψ₋, ψ₊)`.
pub fn transform_electron(psi: &[C64; 2], tr: Transformation) -> [C64; 2] {
    apply(psi, tr, |k| 0.5 * sigma(k))
}

/// Photon components `(χ₋, χ₊)`.
pub fn transform_photon(chi: &[C64; 2], tr: Transformation) -> [C64; 2] {
    apply(chi, tr, sigma)
}

/// Three-body components: `ψ ↦ e^{−a(ς₀ + ς₁/2 + ς₂/2)}ψ` for a boost,
/// every `ς` flipped for `P`, flipped and conjugated for `T`.
pub fn transform_components(psi: &[C64; 8], tr: Transformation) -> [C64; 8] {
    apply(psi, tr, |k| sigma(k >> 2) + 0.5 * sigma((k >> 1) & 1) + 0.5 * sigma(k & 1))
}

/// Image of the event `(t, s)` under the boost of rapidity `a`.
pub fn boost_coordinates(a: f64, t: f64, s: f64) -> (f64, f64) {
    let (ch, sh) = (a.cosh(), a.sinh());
    (t * ch + s * sh, s * ch + t * sh)
}
