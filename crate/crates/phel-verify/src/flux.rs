use phel_numerics::{C64, I};
use phel_threebody::{LeakyRun, ThreeBodyField, TransitionFunction};
use std::f64::consts::FRAC_1_SQRT_2;

/// Contact walls: `𝒞₁` where the photon meets electron 1, `𝒞₂` electron 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wall {
    C1,
    C2,
}

/// Outward probability flux `−j·n` through a wall from all eight
/// components.
pub fn wall_flux_raw(psi: &[C64; 8], wall: Wall) -> f64 {
    let n = |k: usize| psi[k].norm_sqr();
    FRAC_1_SQRT_2
        * match wall {
            Wall::C1 => n(2) + n(3) - n(4) - n(5),
            Wall::C2 => n(4) + n(6) - n(1) - n(3),
        }
}

/// The same flux after substituting the leaky wall condition with
/// transition value `mu`.
pub fn wall_flux_reduced(psi: &[C64; 8], mu: f64, wall: Wall) -> f64 {
    let n = |k: usize| psi[k].norm_sqr();
    FRAC_1_SQRT_2
        * (mu * mu - 1.0)
        * match wall {
            Wall::C1 => n(4) + n(5),
            Wall::C2 => n(1) + n(3),
        }
}

/// Largest violation of the leaky condition at a wall point:
/// `ψ_{−+ς₂} = μe^{iθ₁}ψ_{+−ς₂}` on `𝒞₁`, `ψ_{+ς₁−} = μe^{iθ₂}ψ_{−ς₁+}` on `𝒞₂`.
pub fn wall_condition_residual(psi: &[C64; 8], mu: f64, theta: f64, wall: Wall) -> f64 {
    let phase = (I * theta).exp() * mu;
    let pairs: [(usize, usize); 2] = match wall {
        Wall::C1 => [(2, 4), (3, 5)],
        Wall::C2 => [(4, 1), (6, 3)],
    };
    pairs.iter().map(|&(out, inc)| (psi[out] - phase * psi[inc]).norm()).fold(0.0, f64::max)
}

/// Largest `|raw − reduced|` over the lattice nodes on either wall,
/// excluding the corner where both electrons meet the photon.
pub fn field_flux_mismatch(field: &ThreeBodyField, mu: &TransitionFunction) -> f64 {
    let g = &field.grid;
    let n = g.count();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for other in 0..n {
            for wall in [Wall::C1, Wall::C2] {
                let (b, c) = match wall {
                    Wall::C1 if other > a => (a, other),
                    Wall::C2 if other < a => (other, a),
                    _ => continue,
                };
                let Some(v) = field.at(a, b, c) else { continue };
                let m = mu.at(g.position(c) - g.position(b));
                worst = worst.max((wall_flux_raw(v, wall) - wall_flux_reduced(v, m, wall)).abs());
            }
        }
    }
    worst
}

pub fn l2_norm_wedge(field: &ThreeBodyField) -> f64 {
    field.norm_sq().sqrt()
}

/// Both sides of the probability balance of a leaky run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Balance {
    pub initial_norm_sq: f64,
    pub final_norm_sq: f64,
    /// Time-integrated flux through both walls (never positive).
    pub integrated_flux: f64,
}

impl Balance {
    pub fn norm_change(&self) -> f64 {
        self.final_norm_sq - self.initial_norm_sq
    }

    /// `|Δ‖Ψ‖² − ∫flux|` relative to the larger side, zero when both vanish.
    pub fn relative_mismatch(&self) -> f64 {
        let scale = self.norm_change().abs().max(self.integrated_flux.abs());
        if scale == 0.0 {
            0.0
        } else {
            (self.norm_change() - self.integrated_flux).abs() / scale
        }
    }
}

pub fn probability_balance(run: &LeakyRun) -> Balance {
    Balance {
        initial_norm_sq: run.initial_norm_sq,
        final_norm_sq: run.field.norm_sq(),
        integrated_flux: run.total_flux(),
    }
}
