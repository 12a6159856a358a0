//! Free one-body propagators in 1+1 dimensions.

mod dirac;
mod goursat;
mod kg;
mod packet;
mod spinor;
mod transport;

pub use dirac::{dirac_point, dirac_point_channels, dirac_propagate, DiracKernel};
pub use goursat::{goursat_left, goursat_right, goursat_left_fn, goursat_right_fn};
pub use kg::kg_cauchy;
pub use packet::{wall_mask, Packet};
pub use spinor::{ElectronSpinor, PhotonBispinor};
pub use transport::{photon_transport, sourced_transport};
