//! Numerical toolkit for Caputo fractional differential equations and the
//! stability of fractional reaction–diffusion systems.
//!
//! Every algorithm is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`.

pub mod error;
pub mod fode;
pub mod io;
pub mod linalg;
pub mod quad;
pub mod rdsim;
pub mod scalar;
pub mod specfun;
pub mod stability;

pub use error::{Error, Result};
pub use scalar::{Real, C};

pub type Complex = C<f64>;
pub type Matrix = linalg::DenseMatrix<f64>;
pub type Grid = fode::TimeGrid<f64>;
pub type Solution = fode::Trajectory<f64>;
pub type Verdict = stability::StabilityVerdict<f64>;
pub type Domain = rdsim::DomainSpec<f64>;
pub type FieldSolution = rdsim::FieldTrajectory<f64>;
