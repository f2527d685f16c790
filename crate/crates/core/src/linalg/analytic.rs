//! f(A) = V f(Λ) V⁻¹ for diagonalizable real A.

use crate::error::{Error, Result};
use crate::linalg::eig::{eig, Spectrum};
use crate::linalg::matrix::{CMatrix, DenseMatrix};
use crate::scalar::{Real, C};

/// Apply `f` through the eigendecomposition of `a`; returns the real part.
///
/// Fails with [`Error::DefectiveMatrix`] when the eigenvector basis is too
/// ill-conditioned for the spectral formula to be trusted.
pub fn apply_analytic<T: Real, F: FnMut(C<T>) -> C<T>>(a: &DenseMatrix<T>, mut f: F) -> Result<DenseMatrix<T>> {
    try_apply_analytic(a, |z| Ok(f(z)))
}

/// Like [`apply_analytic`] for fallible `f` (e.g. special functions that can overflow).
pub fn try_apply_analytic<T: Real, F: FnMut(C<T>) -> Result<C<T>>>(a: &DenseMatrix<T>, f: F) -> Result<DenseMatrix<T>> {
    eig(a)?.apply(f)
}

impl<T: Real> Spectrum<T> {
    /// V f(Λ) V⁻¹ (real part) using this decomposition.
    pub fn apply<F: FnMut(C<T>) -> Result<C<T>>>(&self, f: F) -> Result<DenseMatrix<T>> {
        Ok(self.apply_complex(f)?.split_real().0)
    }

    /// V f(Λ) V⁻¹ without discarding the imaginary part.
    pub fn apply_complex<F: FnMut(C<T>) -> Result<C<T>>>(&self, mut f: F) -> Result<CMatrix<T>> {
        let (v, vinv) = match (&self.eigenvectors, &self.inverse) {
            (Some(v), Some(vinv)) if self.is_diagonalizable() => (v, vinv),
            _ => return Err(Error::DefectiveMatrix { condition: self.condition.as_f64() }),
        };
        let n = self.dim();
        let mut fl: Vec<C<T>> = Vec::with_capacity(n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            // Conjugate eigenvalues of a real matrix share f up to conjugation.
            let value = match (0..k).find(|&j| self.eigenvalues[j] == lambda.conj() && lambda.im != T::zero()) {
                Some(j) => fl[j].conj(),
                None => f(lambda)?,
            };
            fl.push(value);
        }
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let vik = v[(i, k)] * fl[k];
                if vik == C::new(T::zero(), T::zero()) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vik * vinv[(k, j)];
                }
            }
        }
        Ok(out)
    }
}
