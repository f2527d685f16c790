//! Nonsymmetric eigenproblem: balancing, Householder reduction to Hessenberg
//! form and Francis double-shift QR, with closed forms for n ≤ 2.
//! Eigenvectors come from complex inverse iteration on the original matrix.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::matrix::{CMatrix, DenseMatrix};
use crate::scalar::{Real, C};

/// Eigenvector conditioning above which a matrix is treated as defective.
pub const NEAR_DEFECTIVE_CONDITION: f64 = 1e8;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConditionFlag {
    Diagonalizable,
    NearDefective,
}

impl ConditionFlag {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConditionFlag::Diagonalizable => "diagonalizable",
            ConditionFlag::NearDefective => "near_defective",
        }
    }
}

/// Eigenvalues (sorted by decreasing real part, then decreasing imaginary
/// part), eigenvector basis and its 1-norm condition number.
#[derive(Clone, Debug)]
pub struct Spectrum<T> {
    pub eigenvalues: Vec<C<T>>,
    pub condition_flag: ConditionFlag,
    /// Unit 2-norm eigenvectors as columns, in eigenvalue order.
    pub eigenvectors: Option<CMatrix<T>>,
    /// κ₁(V) = ‖V‖₁‖V⁻¹‖₁; infinite if V is numerically singular.
    pub condition: T,
    pub(crate) inverse: Option<CMatrix<T>>,
}

impl<T: Real> Spectrum<T> {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Largest real part (spectral abscissa).
    pub fn abscissa(&self) -> T {
        self.eigenvalues.iter().map(|z| z.re).fold(T::neg_infinity(), T::max)
    }

    pub fn is_diagonalizable(&self) -> bool {
        self.condition_flag == ConditionFlag::Diagonalizable
    }
}

/// Full eigendecomposition of a real square matrix.
pub fn eig<T: Real>(a: &DenseMatrix<T>) -> Result<Spectrum<T>> {
    let eigenvalues = eigenvalues(a)?;
    let vectors = eigenvectors(a, &eigenvalues);
    let (condition, inverse) = conditioning(&vectors);
    let flag = if condition > T::lit(NEAR_DEFECTIVE_CONDITION) || !condition.is_finite() {
        ConditionFlag::NearDefective
    } else {
        ConditionFlag::Diagonalizable
    };
    Ok(Spectrum { eigenvalues, condition_flag: flag, eigenvectors: Some(vectors), condition, inverse })
}

/// Eigenvalues only, sorted as in [`Spectrum`].
pub fn eigenvalues<T: Real>(a: &DenseMatrix<T>) -> Result<Vec<C<T>>> {
    let n = a.dim();
    let mut ev = match n {
        1 => vec![C::new(a[(0, 0)], T::zero())],
        2 => quadratic_eigenvalues(a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]).to_vec(),
        _ => {
            let mut h = a.clone();
            balance(&mut h);
            hessenberg(&mut h);
            hqr(&h)?
        }
    };
    sort_spectrum(&mut ev);
    Ok(ev)
}

/// Roots of λ² − (a + d)λ + (ad − bc) for [[a, b], [c, d]].
pub fn quadratic_eigenvalues<T: Real>(a: T, b: T, c: T, d: T) -> [C<T>; 2] {
    let half = T::lit(0.5);
    let mean = half * (a + d);
    let gap = half * (a - d);
    let disc = gap * gap + b * c;
    if disc >= T::zero() {
        let root = disc.sqrt();
        let big = if mean >= T::zero() { mean + root } else { mean - root };
        let det = a * d - b * c;
        let small = if big != T::zero() { det / big } else { T::zero() };
        [C::new(big, T::zero()), C::new(small, T::zero())]
    } else {
        let root = (-disc).sqrt();
        [C::new(mean, root), C::new(mean, -root)]
    }
}

fn sort_spectrum<T: Real>(ev: &mut [C<T>]) {
    ev.sort_by(|x, y| y.re.partial_cmp(&x.re).unwrap().then(y.im.partial_cmp(&x.im).unwrap()));
}

/// Parlett–Reinsch balancing by powers of two (eigenvalues unchanged exactly).
fn balance<T: Real>(a: &mut DenseMatrix<T>) {
    let n = a.dim();
    let radix = T::lit(2.0);
    let sqrdx = radix * radix;
    loop {
        let mut done = true;
        for i in 0..n {
            let (mut c, mut r) = (T::zero(), T::zero());
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == T::zero() || r == T::zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < T::lit(0.95) * s {
                done = false;
                let inv = f.recip();
                for j in 0..n {
                    a[(i, j)] *= inv;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
        if done {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form.
fn hessenberg<T: Real>(a: &mut DenseMatrix<T>) {
    let n = a.dim();
    for k in 0..n.saturating_sub(2) {
        let norm: T = (k + 1..n).map(|i| a[(i, k)] * a[(i, k)]).sum::<T>().sqrt();
        if norm == T::zero() {
            continue;
        }
        let alpha = if a[(k + 1, k)] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: T = v.iter().map(|&x| x * x).sum();
        if vnorm2 == T::zero() {
            continue;
        }
        let beta = T::lit(2.0) / vnorm2;
        for j in 0..n {
            let s: T = (k + 1..n).zip(&v).map(|(i, &vi)| vi * a[(i, j)]).sum::<T>() * beta;
            for (i, &vi) in (k + 1..n).zip(&v) {
                a[(i, j)] -= s * vi;
            }
        }
        for i in 0..n {
            let s: T = (k + 1..n).zip(&v).map(|(j, &vj)| a[(i, j)] * vj).sum::<T>() * beta;
            for (j, &vj) in (k + 1..n).zip(&v) {
                a[(i, j)] -= s * vj;
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = T::zero();
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix.
fn hqr<T: Real>(h: &DenseMatrix<T>) -> Result<Vec<C<T>>> {
    let n = h.dim();
    let w = n + 1;
    // 1-based working copy.
    let mut a = vec![T::zero(); w * w];
    for i in 0..n {
        for j in 0..n {
            a[(i + 1) * w + j + 1] = h[(i, j)];
        }
    }
    let idx = |i: usize, j: usize| i * w + j;
    let mut wr = vec![T::zero(); w];
    let mut wi = vec![T::zero(); w];
    let mut anorm = T::zero();
    for i in 1..=n {
        for j in i.saturating_sub(1).max(1)..=n {
            anorm += a[idx(i, j)].abs();
        }
    }
    let mut nn = n;
    let mut t = T::zero();
    let mut total_its = 0usize;
    while nn >= 1 {
        let mut its = 0usize;
        loop {
            let mut l = nn;
            while l >= 2 {
                let mut s = a[idx(l - 1, l - 1)].abs() + a[idx(l, l)].abs();
                if s == T::zero() {
                    s = anorm;
                }
                if a[idx(l, l - 1)].abs() + s == s {
                    a[idx(l, l - 1)] = T::zero();
                    break;
                }
                l -= 1;
            }
            let mut x = a[idx(nn, nn)];
            if l == nn {
                wr[nn] = x + t;
                wi[nn] = T::zero();
                nn -= 1;
                break;
            }
            let mut y = a[idx(nn - 1, nn - 1)];
            let mut ww = a[idx(nn, nn - 1)] * a[idx(nn - 1, nn)];
            if l == nn - 1 {
                let p = T::lit(0.5) * (y - x);
                let q = p * p + ww;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= T::zero() {
                    z = p + if p >= T::zero() { z } else { -z };
                    wr[nn - 1] = x + z;
                    wr[nn] = x + z;
                    if z != T::zero() {
                        wr[nn] = x - ww / z;
                    }
                    wi[nn - 1] = T::zero();
                    wi[nn] = T::zero();
                } else {
                    wr[nn - 1] = x + p;
                    wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                nn = nn.saturating_sub(2);
                break;
            }
            if its == MAX_SWEEPS_PER_EIGENVALUE {
                let partial = (nn + 1..=n).map(|i| Complex64::new(wr[i].as_f64(), wi[i].as_f64())).collect();
                return Err(Error::NoConvergence { iterations: total_its, partial });
            }
            if its > 0 && its.is_multiple_of(10) {
                // Exceptional shift.
                t += x;
                for i in 1..=nn {
                    a[idx(i, i)] -= x;
                }
                let s = a[idx(nn, nn - 1)].abs() + a[idx(nn - 1, nn - 2)].abs();
                x = T::lit(0.75) * s;
                y = x;
                ww = T::lit(-0.4375) * s * s;
            }
            its += 1;
            total_its += 1;
            let (mut p, mut q, mut r);
            let mut m = nn - 2;
            loop {
                let z = a[idx(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - ww) / a[idx(m + 1, m)] + a[idx(m, m + 1)];
                q = a[idx(m + 1, m + 1)] - z - rr - ss;
                r = a[idx(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[idx(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[idx(m - 1, m - 1)].abs() + z.abs() + a[idx(m + 1, m + 1)].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                a[idx(i, i - 2)] = T::zero();
                if i != m + 2 {
                    a[idx(i, i - 3)] = T::zero();
                }
            }
            let mut k = m;
            while k < nn {
                if k != m {
                    p = a[idx(k, k - 1)];
                    q = a[idx(k + 1, k - 1)];
                    r = T::zero();
                    if k != nn - 1 {
                        r = a[idx(k + 2, k - 1)];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != T::zero() {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let norm = (p * p + q * q + r * r).sqrt();
                let s = if p >= T::zero() { norm } else { -norm };
                if s != T::zero() {
                    if k == m {
                        if l != m {
                            a[idx(k, k - 1)] = -a[idx(k, k - 1)];
                        }
                    } else {
                        a[idx(k, k - 1)] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    let z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nn {
                        p = a[idx(k, j)] + q * a[idx(k + 1, j)];
                        if k != nn - 1 {
                            p += r * a[idx(k + 2, j)];
                            a[idx(k + 2, j)] -= p * z;
                        }
                        a[idx(k + 1, j)] -= p * y;
                        a[idx(k, j)] -= p * x;
                    }
                    let mmin = if nn < k + 3 { nn } else { k + 3 };
                    for i in l..=mmin {
                        p = x * a[idx(i, k)] + y * a[idx(i, k + 1)];
                        if k != nn - 1 {
                            p += z * a[idx(i, k + 2)];
                            a[idx(i, k + 2)] -= p * r;
                        }
                        a[idx(i, k + 1)] -= p * q;
                        a[idx(i, k)] -= p;
                    }
                }
                k += 1;
            }
            if l >= nn - 1 {
                break;
            }
        }
    }
    Ok((1..=n).map(|i| C::new(wr[i], wi[i])).collect())
}

/// Inverse iteration with shift λ_i (slightly perturbed) for each eigenvalue.
/// Start vectors of numerically coincident eigenvalues are orthogonalized so
/// that a degenerate but diagonalizable eigenspace yields independent vectors;
/// a Jordan block still collapses them, which the condition number detects.
fn eigenvectors<T: Real>(a: &DenseMatrix<T>, ev: &[C<T>]) -> CMatrix<T> {
    let n = a.dim();
    let eps = T::epsilon();
    // For A = 0 every vector is an eigenvector; any positive scale works.
    let scale = match a.norm_1() {
        s if s > T::zero() => s,
        _ => T::one(),
    };
    let cluster_tol = T::lit(1e-8) * scale;
    let mut v = CMatrix::zeros(n);
    let mut done: Vec<bool> = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        let lambda = ev[i];
        let mut x: Vec<C<T>> = (0..n)
            .map(|k| {
                let h = ((k * 7919 + i * 104_729) % 97) as f64 / 97.0;
                C::new(T::lit(1.0 + h), T::lit(0.5 * h))
            })
            .collect();
        for j in 0..i {
            if (ev[j] - lambda).norm() <= cluster_tol {
                let col = v.column(j);
                let dot: C<T> = col.iter().zip(&x).map(|(c, xi)| c.conj() * xi).sum();
                for (xi, c) in x.iter_mut().zip(&col) {
                    *xi -= dot * c;
                }
            }
        }
        normalize(&mut x);
        let shift = lambda + C::new(T::lit(4.0) * eps * scale, T::lit(2.0) * eps * scale);
        let mut m: Vec<C<T>> = a.to_complex_vec();
        for k in 0..n {
            m[k * n + k] -= shift;
        }
        let perm = lu_with_pivot_floor(&mut m, n, eps * scale);
        for _ in 0..3 {
            crate::linalg::matrix::lu_solve(&m, n, &perm, &mut x);
            normalize(&mut x);
        }
        v.set_column(i, &x);
        // Conjugate partner of a complex eigenvalue of a real matrix.
        if lambda.im != T::zero() {
            if let Some(j) = (i + 1..n).find(|&j| !done[j] && ev[j] == lambda.conj()) {
                let conj: Vec<C<T>> = x.iter().map(|z| z.conj()).collect();
                v.set_column(j, &conj);
                done[j] = true;
            }
        }
        done[i] = true;
    }
    v
}

fn normalize<T: Real>(x: &mut [C<T>]) {
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    if norm > T::zero() && norm.is_finite() {
        // Fix the phase so the largest component is real and positive.
        let big = x
            .iter()
            .copied()
            .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(C::zero());
        let phase = if big.norm() > T::zero() { big.conj() / big.norm() } else { C::new(T::one(), T::zero()) };
        for z in x.iter_mut() {
            *z = *z * phase / norm;
        }
    }
}

/// Complex LU in which vanishing pivots are replaced by `floor`; used for the
/// intentionally near-singular shifted systems of inverse iteration.
fn lu_with_pivot_floor<T: Real>(a: &mut [C<T>], n: usize, floor: T) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[x * n + k].norm().partial_cmp(&a[y * n + k].norm()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(k);
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
        }
        if a[k * n + k].norm() < floor {
            a[k * n + k] = C::new(floor, T::zero());
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let l = a[i * n + k] / pivot;
            a[i * n + k] = l;
            if l.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let u = a[k * n + j];
                a[i * n + j] -= l * u;
            }
        }
    }
    perm
}

fn conditioning<T: Real>(v: &CMatrix<T>) -> (T, Option<CMatrix<T>>) {
    match v.inverse() {
        Ok(inv) => {
            let k = v.norm_1() * inv.norm_1();
            (if k.is_finite() { k } else { T::infinity() }, Some(inv))
        }
        Err(_) => (T::infinity(), None),
    }
}

impl<T: Real> DenseMatrix<T> {
    fn to_complex_vec(&self) -> Vec<C<T>> {
        self.as_slice().iter().map(|&x| C::new(x, T::zero())).collect()
    }
}
