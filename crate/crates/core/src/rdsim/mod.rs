//! Spectral-Galerkin simulation of fractional reaction–diffusion systems on
//! intervals and rectangles.

mod domain;
mod fit;
mod simulate;
mod transform;

pub use domain::{eigenbasis, BasisFunction, Boundary, DomainSpec, EigenBasis, Shape};
pub use fit::{fit_rate, fit_samples, fit_trajectory, RateFit, RateKind, MIN_FIT_SAMPLES};
pub use simulate::{simulate_linear_rd, simulate_nonlinear_rd, FieldTrajectory, RdOptions};
pub use transform::{Collocation, Field};
