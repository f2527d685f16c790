//! Fractional differential equations in the Caputo sense, 0 < α ≤ 1.

mod duhamel;
mod grid;
mod linear;
mod malthus;
mod pece;
mod resolvent;
mod trajectory;

pub use duhamel::{fractional_integral_of_one, scalar_duhamel};
pub use grid::{Spacing, TimeGrid};
pub use linear::{solve_linear, LinearFDE, DEFAULT_BLOW_UP_CEILING};
pub use malthus::{discrete_malthus, kernel_bound_ratio};
pub use pece::{solve_nonlinear, solve_nonlinear_with, solve_semilinear, PeceOptions};
pub use resolvent::{resolvent_p, resolvent_s, resolvent_via_subordination, ResolventFamily, ResolventKind};
pub(crate) use trajectory::euclid;
pub use trajectory::{BlowUp, Scheme, Trajectory};
