//! Massless three-body solution by tracing characteristics backwards.
//!
//! Component signs `σ = (σ₀, σ₁, σ₂)`, `−1` for a right mover and `+1` for a
//! left mover; index `4·[σ₀>0] + 2·[σ₁>0] + [σ₂>0]`. Going back in time by
//! `δ`, particle `i` moves from `x` to `x + σᵢ δ`. A backward ray that
//! reaches `x₀ = x₁` in component `(−,+,σ₂)` continues as `(+,−,σ₂)` with
//! weight `μ(x₂ − x₁)·e^{iθ₁}`; one that reaches `x₀ = x₂` in `(+,σ₁,−)`
//! continues as `(−,σ₁,+)` with weight `μ(x₂ − x₁)·e^{iθ₂}`.

use crate::C64;

fn signs(k: usize) -> [f64; 3] {
    let s = |bit: usize| if k >> bit & 1 == 1 { 1.0 } else { -1.0 };
    [s(2), s(1), s(0)]
}

fn index(s: [f64; 3]) -> usize {
    let b = |v: f64| usize::from(v > 0.0);
    4 * b(s[0]) + 2 * b(s[1]) + b(s[2])
}

/// All eight components at time `t` and positions `x = (x_ph, x_e1, x_e2)`
/// with `x_e1 ≤ x_ph ≤ x_e2`.
pub fn massless_three_body<D, M>(data: D, mu: M, theta: [f64; 2], t: f64, x: [f64; 3]) -> [C64; 8]
where
    D: Fn([f64; 3]) -> [C64; 8],
    M: Fn(f64) -> f64,
{
    std::array::from_fn(|k| trace(&data, &mu, theta, t, x, k))
}

fn trace<D, M>(data: &D, mu: &M, theta: [f64; 2], t: f64, x: [f64; 3], k: usize) -> C64
where
    D: Fn([f64; 3]) -> [C64; 8],
    M: Fn(f64) -> f64,
{
    let mut s = signs(k);
    let mut p = x;
    let mut left = t;
    let mut weight = C64::new(1.0, 0.0);
    for _ in 0..10_000 {
        // backward closing speeds of the two gaps
        let hit1 = if s[0] < 0.0 && s[1] > 0.0 { Some((p[0] - p[1]) / 2.0) } else { None };
        let hit2 = if s[0] > 0.0 && s[2] < 0.0 { Some((p[2] - p[0]) / 2.0) } else { None };
        let next = match (hit1, hit2) {
            (Some(a), Some(b)) => Some(if a <= b { (a, 1) } else { (b, 2) }),
            (Some(a), None) => Some((a, 1)),
            (None, Some(b)) => Some((b, 2)),
            (None, None) => None,
        };
        match next {
            Some((d, wall)) if d < left => {
                for i in 0..3 {
                    p[i] += s[i] * d;
                }
                left -= d;
                let m = mu(p[2] - p[1]);
                if m == 0.0 {
                    return C64::new(0.0, 0.0);
                }
                weight *= C64::from_polar(m, theta[wall - 1]);
                if wall == 1 {
                    s[0] = 1.0;
                    s[1] = -1.0;
                } else {
                    s[0] = -1.0;
                    s[2] = 1.0;
                }
            }
            _ => {
                for i in 0..3 {
                    p[i] += s[i] * left;
                }
                return weight * data(p)[index(s)];
            }
        }
    }
    panic!("ray did not terminate")
}
