pub mod classify;
pub mod fit;
pub mod ml;
pub mod simulate;
pub mod turing;
