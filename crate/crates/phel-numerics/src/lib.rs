//! Numerical primitives shared by the propagators and the many-body solvers.

pub mod bessel;
mod error;
mod field;
mod grid;
mod params;
pub mod quad;
mod sign;

pub use bessel::{bessel_j, bessel_j0, bessel_j1, j1_over_x};
pub use error::{Error, Result};
pub use field::{eval_slice, interpolate, lagrange4, SampledField1D, SampledField2D, SampledField3D};
pub use grid::Grid1D;
pub use params::PhysicalParams;
pub use sign::Sign;
pub use quad::{integrate, ordered_sum, panels, simpson, simpson_weights, smoothstep5};

/// Complex scalar used for all amplitudes.
pub type C64 = num_complex::Complex64;

/// The imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);
