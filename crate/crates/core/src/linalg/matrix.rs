//! Dense square matrices over real and complex scalars.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// Square real matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> DenseMatrix<T> {
    /// Build from row-major entries; rejects non-square shapes and non-finite values.
    pub fn new(n: usize, data: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix dimension must be positive".into()));
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: data.len() });
        }
        if let Some(i) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(format!("entry ({}, {}) is not finite", i / n, i % n)));
        }
        Ok(Self { n, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(d: &[T]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { T::zero() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: T) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&x| x * s).collect() }
    }

    /// self + s·other
    pub fn add_scaled(&self, s: T, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + s * b).collect() }
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        self.data.chunks(self.n).map(|row| row.iter().zip(x).map(|(&a, &b)| a * b).sum()).collect()
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> T {
        (0..self.n).map(|j| (0..self.n).map(|i| self[(i, j)].abs()).sum::<T>()).fold(T::zero(), T::max)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> T {
        self.data.chunks(self.n).map(|r| r.iter().map(|x| x.abs()).sum::<T>()).fold(T::zero(), T::max)
    }

    pub fn norm_fro(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    /// Spectral norm √λmax(AᵀA).
    pub fn norm_2(&self) -> T {
        let ata = &self.transpose() * self;
        symmetric_eigenvalues(&ata).into_iter().fold(T::zero(), T::max).max(T::zero()).sqrt()
    }

    /// Logarithmic 2-norm λmax((A + Aᵀ)/2); bounds Re λ for every eigenvalue λ.
    pub fn log_norm(&self) -> T {
        let half = T::lit(0.5);
        let sym = Self::from_fn(self.n, |i, j| half * (self[(i, j)] + self[(j, i)]));
        symmetric_eigenvalues(&sym).into_iter().fold(T::neg_infinity(), T::max)
    }

    pub fn det(&self) -> T {
        let mut a = self.data.clone();
        match lu_in_place(&mut a, self.n, |x: &T| x.abs()) {
            Ok(lu) => (0..self.n).fold(lu.sign, |p, i| p * a[i * self.n + i]),
            Err(_) => T::zero(),
        }
    }

    /// Solve A X = B for square B.
    pub fn solve(&self, b: &Self) -> Result<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let lu = lu_in_place(&mut a, n, |x: &T| x.abs())?;
        let mut out = Self::zeros(n);
        let mut col = vec![T::zero(); n];
        for j in 0..n {
            for i in 0..n {
                col[i] = b[(i, j)];
            }
            lu_solve(&a, n, &lu.perm, &mut col);
            for i in 0..n {
                out[(i, j)] = col[i];
            }
        }
        Ok(out)
    }

    pub fn to_complex(&self) -> CMatrix<T> {
        CMatrix { n: self.n, data: self.data.iter().map(|&x| C::new(x, T::zero())).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).map(|(&a, &b)| (a - b).abs()).fold(T::zero(), T::max)
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Real> Mul for &DenseMatrix<T> {
    type Output = DenseMatrix<T>;
    fn mul(self, rhs: &DenseMatrix<T>) -> DenseMatrix<T> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<T: fmt::Debug> fmt::Debug for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n)).finish()
    }
}

/// Square complex matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct CMatrix<T> {
    n: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![C::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> Vec<C<T>> {
        (0..self.n).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[C<T>]) {
        for (i, &x) in v.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    pub fn norm_1(&self) -> T {
        (0..self.n).map(|j| (0..self.n).map(|i| self[(i, j)].norm()).sum::<T>()).fold(T::zero(), T::max)
    }

    pub fn matvec(&self, x: &[C<T>]) -> Vec<C<T>> {
        self.data.chunks(self.n).map(|row| row.iter().zip(x).map(|(&a, &b)| a * b).sum()).collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let lu = lu_in_place(&mut a, n, |x: &C<T>| x.norm())?;
        let mut out = Self::zeros(n);
        let mut col = vec![C::zero(); n];
        for j in 0..n {
            col.iter_mut().for_each(|c| *c = C::zero());
            col[j] = C::one();
            lu_solve(&a, n, &lu.perm, &mut col);
            out.set_column(j, &col);
        }
        Ok(out)
    }

    /// Real parts and the largest discarded imaginary magnitude.
    pub fn split_real(&self) -> (DenseMatrix<T>, T) {
        let residue = self.data.iter().map(|z| z.im.abs()).fold(T::zero(), T::max);
        (DenseMatrix { n: self.n, data: self.data.iter().map(|z| z.re).collect() }, residue)
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &C<T> {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C<T> {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, rhs: &CMatrix<T>) -> CMatrix<T> {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

pub(crate) struct Lu<T> {
    pub perm: Vec<usize>,
    pub sign: T,
}

/// Partial-pivoting LU in place (unit lower factor below the diagonal).
pub(crate) fn lu_in_place<T, F, M>(a: &mut [F], n: usize, mag: M) -> Result<Lu<T>>
where
    T: Real,
    F: Copy + num_traits::NumAssign + std::ops::Neg<Output = F>,
    M: Fn(&F) -> T,
{
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = T::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| mag(&a[x * n + k]).partial_cmp(&mag(&a[y * n + k])).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(k);
        if !(mag(&a[p * n + k]) > T::zero()) {
            return Err(Error::Domain("matrix is singular".into()));
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let l = a[i * n + k] / pivot;
            a[i * n + k] = l;
            if l == F::zero() {
                continue;
            }
            for j in k + 1..n {
                let u = a[k * n + j];
                a[i * n + j] -= l * u;
            }
        }
    }
    Ok(Lu { perm, sign })
}

pub(crate) fn lu_solve<F: Copy + num_traits::NumAssign>(lu: &[F], n: usize, perm: &[usize], b: &mut [F]) {
    let pb: Vec<F> = perm.iter().map(|&p| b[p]).collect();
    b.copy_from_slice(&pb);
    for i in 0..n {
        for j in 0..i {
            let l = lu[i * n + j];
            let y = b[j];
            b[i] -= l * y;
        }
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let u = lu[i * n + j];
            let y = b[j];
            b[i] -= u * y;
        }
        b[i] /= lu[i * n + i];
    }
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn symmetric_eigenvalues<T: Real>(s: &DenseMatrix<T>) -> Vec<T> {
    let n = s.n;
    let mut a = s.clone();
    let eps = T::epsilon();
    for _sweep in 0..100 {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        let diag: T = (0..n).map(|i| a[(i, i)] * a[(i, i)]).sum();
        if off <= eps * eps * diag || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = (t * t + T::one()).sqrt().recip();
                let sn = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - sn * akq;
                    a[(k, q)] = sn * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - sn * aqk;
                    a[(q, k)] = sn * apk + c * aqk;
                }
            }
        }
    }
    let mut d: Vec<T> = (0..n).map(|i| a[(i, i)]).collect();
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> DenseMatrix<f64> {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(DenseMatrix::<f64>::new(2, vec![1.0; 3]).is_err());
        assert!(DenseMatrix::<f64>::new(0, vec![]).is_err());
        assert!(DenseMatrix::new(1, vec![f64::NAN]).is_err());
        assert!(DenseMatrix::<f64>::from_rows(&[vec![1.0, 2.0], vec![3.0]]).is_err());
    }

    #[test]
    fn product_determinant_and_solve() {
        let a = m(&[&[2.0, 1.0, 0.0], &[1.0, 3.0, 1.0], &[0.0, 1.0, 4.0]]);
        assert!((a.det() - 18.0).abs() < 1e-13);
        let x = a.solve(&DenseMatrix::identity(3)).unwrap();
        assert!((&a * &x).max_abs_diff(&DenseMatrix::identity(3)) < 1e-15);
        assert_eq!(m(&[&[1.0, 2.0], &[2.0, 4.0]]).det(), 0.0);
        assert!(m(&[&[1.0, 2.0], &[2.0, 4.0]]).solve(&DenseMatrix::identity(2)).is_err());
    }

    #[test]
    fn norms() {
        let a = m(&[&[1.0, -2.0], &[3.0, 4.0]]);
        assert_eq!(a.norm_1(), 6.0);
        assert_eq!(a.norm_inf(), 7.0);
        assert!((a.norm_fro() - 30f64.sqrt()).abs() < 1e-15);
        // singular values of [[1,-2],[3,4]]: sqrt(15 ± sqrt(125))
        assert!((a.norm_2() - (15.0 + 125f64.sqrt()).sqrt()).abs() < 1e-13);
        // symmetric part [[1, 0.5],[0.5, 4]]
        let mu = 2.5 + (2.25f64 + 0.25).sqrt();
        assert!((a.log_norm() - mu).abs() < 1e-13);
    }

    #[test]
    fn jacobi_on_known_spectrum() {
        let s = m(&[&[2.0, -1.0, 0.0], &[-1.0, 2.0, -1.0], &[0.0, -1.0, 2.0]]);
        let ev = symmetric_eigenvalues(&s);
        let r2 = 2f64.sqrt();
        for (got, want) in ev.iter().zip([2.0 - r2, 2.0, 2.0 + r2]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn complex_inverse() {
        let mut c = CMatrix::<f64>::identity(2);
        c[(0, 1)] = C::new(0.0, 2.0);
        c[(1, 0)] = C::new(1.0, 1.0);
        let inv = c.inverse().unwrap();
        let p = &c * &inv;
        for i in 0..2 {
            for j in 0..2 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((p[(i, j)] - C::new(e, 0.0)).norm() < 1e-15);
            }
        }
    }
}
