//! One photon and one electron on a line with the photon on the left.
//!
//! Components are indexed `2·i(ς₀) + i(ς₁)` with `i(−) = 0`, `i(+) = 1`;
//! `ς₀` labels the photon, `ς₁` the electron. The contact condition on the
//! collision set is `ψ₊₋ = e^{iθ} ψ₋₊`.

mod config;
mod data;
mod error;
mod evolve;
mod field;
mod picard;

pub use config::{classify, comp, Region, TwoBodyConfig};
pub use data::{ProductData, TwoBodyData, TwoBodyInitial};
pub use error::{Error, Result};
pub use evolve::{contact_evolve, evolve_far, ContactRow, TwoBodyEvolver};
pub use field::{boundary_residual_2body, TwoBodyField};
pub use picard::{picard_solve, PicardGrid, PicardSolution};
