use phel_numerics::{smoothstep5, Error, Result};

/// Transition function: zero on `[0, ε]`, one on `[2ε, ∞)`, quintic
/// smoothstep between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionFunction {
    pub epsilon: f64,
}

impl TransitionFunction {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::domain("TransitionFunction", format!("epsilon = {epsilon} must be finite and >= 0")));
        }
        Ok(Self { epsilon })
    }

    /// Value at distance `d`; negative distances count as zero, which only
    /// happens for roundoff-sized overshoots at the corner.
    pub fn at(&self, d: f64) -> f64 {
        if self.epsilon == 0.0 {
            return 1.0;
        }
        smoothstep5((d - self.epsilon) / self.epsilon)
    }
}

pub fn mu_eval(mu: &TransitionFunction, d: f64) -> Result<f64> {
    if !(d >= 0.0) {
        return Err(Error::domain("mu_eval", format!("distance {d} must be >= 0")));
    }
    Ok(mu.at(d))
}
