//! The contraction `T_ε : Ker(i + Ĥ*) → Ker(i − Ĥ*)` encoding the leaky
//! contact conditions.
//!
//! Writing `Ψ = Ψ₋ + T_εΨ₋` and imposing the wall conditions on `s = 0` and
//! `s̃ = 0` fixes the outgoing profiles (`μ` at electron distance `2y`):
//!
//! `g₄(x,y) = e^{iθ₂}μ f₁(x,y) − e^{−y} f₄(x−y,y)`
//! `g₂(x,y) = e^{iθ₁}μ [(1 − e^{−2y}) f₄(x,y) + e^{iθ₂−y}μ f₁(x+y,y)]`
//! `g₃(x,y) = e^{iθ₁}μ f₅(x,y) − e^{−y} f₃(x+y,y)`
//! `g₆(x,y) = e^{iθ₂}μ [(1 − e^{−2y}) f₃(x,y) + e^{iθ₁−y}μ f₅(x−y,y)]`

use crate::{wedge_norm, Deficiency, DeficiencyElement, Profile, WedgeQuadrature};
use phel_numerics::{Error, Result, C64};
use phel_threebody::TransitionFunction;
use std::sync::Arc;

/// `T_ε f` as an element of `Ker(i − Ĥ*)`.
pub fn contraction_t(f: &DeficiencyElement, epsilon: f64, theta1: f64, theta2: f64) -> Result<DeficiencyElement> {
    if f.kind != Deficiency::Minus || f.decay != 1.0 {
        return Err(Error::contract("contraction_t", "input must be an element of Ker(i + H*)"));
    }
    let mu = TransitionFunction::new(epsilon)?;
    let e1 = C64::from_polar(1.0, theta1);
    let e2 = C64::from_polar(1.0, theta2);
    let [f1, f3, f4, f5] = f.profiles.clone();
    let m = move |y: f64| mu.at(2.0 * y);
    let g2: Profile = {
        let (f1, f4) = (f1.clone(), f4.clone());
        Arc::new(move |x, y| e1 * m(y) * ((1.0 - (-2.0 * y).exp()) * f4(x, y) + e2 * (-y).exp() * m(y) * f1(x + y, y)))
    };
    let g3: Profile = {
        let (f3, f5) = (f3.clone(), f5.clone());
        Arc::new(move |x, y| e1 * m(y) * f5(x, y) - (-y).exp() * f3(x + y, y))
    };
    let g4: Profile = Arc::new(move |x, y| e2 * m(y) * f1(x, y) - (-y).exp() * f4(x - y, y));
    let g6: Profile =
        Arc::new(move |x, y| e2 * m(y) * ((1.0 - (-2.0 * y).exp()) * f3(x, y) + e1 * (-y).exp() * m(y) * f5(x - y, y)));
    Ok(DeficiencyElement::new(Deficiency::Plus, [g2, g3, g4, g6]))
}

/// Norms entering the contraction checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionNorms {
    /// `‖f‖`.
    pub input: f64,
    /// `‖T_ε f‖`.
    pub output: f64,
    /// `‖(T_ε − T₀) f‖`.
    pub distance_to_unitary: f64,
}

impl ContractionNorms {
    pub fn measure(f: &DeficiencyElement, epsilon: f64, theta1: f64, theta2: f64, quad: &WedgeQuadrature) -> Result<Self> {
        Ok(Self::measure_ladder(f, &[epsilon], theta1, theta2, quad)?[0])
    }

    /// Norms for each `ε` of a ladder, sharing `‖f‖`.
    pub fn measure_ladder(
        f: &DeficiencyElement,
        ladder: &[f64],
        theta1: f64,
        theta2: f64,
        quad: &WedgeQuadrature,
    ) -> Result<Vec<Self>> {
        let t0 = contraction_t(f, 0.0, theta1, theta2)?;
        let input = wedge_norm(|p, s, st| f.eval_relative(p, s, st), quad)?;
        ladder
            .iter()
            .map(|&epsilon| {
                if epsilon == 0.0 {
                    let output = wedge_norm(|p, s, st| t0.eval_relative(p, s, st), quad)?;
                    return Ok(Self { input, output, distance_to_unitary: 0.0 });
                }
                let t = contraction_t(f, epsilon, theta1, theta2)?;
                let output = wedge_norm(|p, s, st| t.eval_relative(p, s, st), quad)?;
                let distance_to_unitary = wedge_norm(
                    |p, s, st| {
                        let (a, b) = (t.eval_relative(p, s, st), t0.eval_relative(p, s, st));
                        std::array::from_fn(|k| a[k] - b[k])
                    },
                    quad,
                )?;
                Ok(Self { input, output, distance_to_unitary })
            })
            .collect()
    }
}
