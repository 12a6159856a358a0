//! Conservation laws, transformation laws and the operator checks on the
//! deficiency spaces of the three-body Hamiltonian, as assertable numbers.

mod contraction;
mod current;
mod deficiency;
mod flux;
mod report;
mod transform;

pub use contraction::{contraction_t, ContractionNorms};
pub use current::{
    continuity_residual, current_equal_time, current_multitime, joint_divergences, CurrentTensor3, EqualTimeCurrent,
    JointDivergence,
};
pub use deficiency::{deficiency_residual, wedge_norm, Deficiency, DeficiencyElement, Profile, WedgeQuadrature};
pub use flux::{
    field_flux_mismatch, l2_norm_wedge, probability_balance, wall_condition_residual, wall_flux_raw,
    wall_flux_reduced, Balance, Wall,
};
pub use report::{convergence_order, Bound, Check};
pub use transform::{boost_coordinates, transform_components, transform_electron, transform_photon, Transformation};
