//! Reference solutions computed by methods unrelated to the production code.
//! Used by the test suites and by the verification suite of the CLI.

pub mod bessel;
pub mod rays;
pub mod spectral;
pub mod trace;

pub type C64 = num_complex::Complex64;
