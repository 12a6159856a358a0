//! A photon between two electrons on a line.
//!
//! Components are indexed `4·i(ς₀) + 2·i(ς₁) + i(ς₂)` with `i(−) = 0`,
//! `i(+) = 1`; `ς₀` labels the photon, `ς₁` electron 1 (left), `ς₂`
//! electron 2 (right). Contact conditions hold on the walls
//! `s_ph = s_e1` (phase θ₁) and `s_ph = s_e2` (phase θ₂):
//! `ψ_{−+ς₂} = e^{iθ₁} ψ_{+−ς₂}` and `ψ_{+ς₁−} = e^{iθ₂} ψ_{−ς₁+}`, in the
//! leaky version multiplied by `μ_ε(s_e2 − s_e1)`.

mod compton;
mod config;
mod convergence;
mod data;
mod leaky;
mod multitime;
mod mu;
mod wedge;

pub use compton::{evolve_compton, evolve_free_3, ComptonCase, ThreeBodyEvolver};
pub use config::{check_config, classify_three_body, comp3, signs3, truncation_count, RegionLabel, ThreeBodyConfig};
pub use convergence::{convergence_study, ConvergenceRow};
pub use data::{exchange_parity, Antisymmetrized, Mirrored, ProductData3, ThreeBodyInitial};
pub use leaky::{leaky_evolve, leaky_evolve_field, leaky_step, macro_step, LeakyRun, StepRecord};
pub use multitime::{multitime_eval, EqualTimeLeg};
pub use mu::{mu_eval, TransitionFunction};
pub use wedge::{ThreeBodyField, WedgeGrid};
