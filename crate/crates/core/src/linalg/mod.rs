//! Dense linear algebra: matrices, eigendecomposition, matrix exponential and
//! spectral application of analytic functions.

pub mod analytic;
pub mod eig;
pub mod expm;
pub mod matrix;

pub use analytic::{apply_analytic, try_apply_analytic};
pub use eig::{eig, eigenvalues, quadratic_eigenvalues, ConditionFlag, Spectrum, NEAR_DEFECTIVE_CONDITION};
pub use expm::expm;
pub use matrix::{symmetric_eigenvalues, CMatrix, DenseMatrix};
