//! Sector stability tests, Turing instability analysis and Neumann
//! Sturm–Liouville eigenvalues.

mod rd;
mod sturm;
mod turing;
mod verdict;

pub use rd::{mode_matrix, rd_spectrum, ModeVerdict, RDSpec, RdSpectrum};
pub use sturm::sturm_liouville_max_eig;
pub use turing::{
    critical_d1, mode_determinant, trace_det_classify, turing_roots, turing_scan, turing_scan_with_modes, TuringReport,
    Witness,
};
pub use verdict::{
    classify_eigenvalues, classify_matrix, classify_scalar, StabilityVerdict, Status, DEFAULT_ANGULAR_TOL,
};
