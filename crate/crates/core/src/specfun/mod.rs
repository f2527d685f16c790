//! Special functions: reciprocal gamma, Mittag-Leffler and Wright-type M function.

pub mod gamma;
pub mod mittag_leffler;
pub mod wright;

pub use gamma::{gamma, ln_gamma, ln_gamma_signed, rgamma, sin_pi};
pub use mittag_leffler::{
    mittag_leffler, mittag_leffler_real, ml, ml_asymptotic, ml_asymptotic_auto, ml_integral, ml_series, ml_with,
    EvalResult, MlConfig, MlParams, Regime,
};
pub use wright::{wright_psi, wright_psi_series, WrightParams};
