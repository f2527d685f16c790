//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants of degree 3, 5, 7, 9 or 13 (Higham 2005).

use crate::error::{Error, Result};
use crate::linalg::matrix::DenseMatrix;
use crate::scalar::Real;

const THETA: [(usize, f64); 4] =
    [(3, 1.495585217958292e-2), (5, 2.53939833006323e-1), (7, 9.504178996162932e-1), (9, 2.097847961257068)];
const THETA_13: f64 = 5.371920351148152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] =
    [17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// e^{tA}.
///
/// Returns [`Error::Overflow`] when the result is not representable, which
/// for the semigroup of an unstable generator marks the horizon beyond which
/// growth can no longer be followed.
pub fn expm<T: Real>(a: &DenseMatrix<T>, t: T) -> Result<DenseMatrix<T>> {
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!("expm needs finite t, got {t}")));
    }
    let n = a.dim();
    let ta = a.scale(t);
    if !ta.is_finite() {
        return Err(Error::Overflow("t·A is not representable".into()));
    }
    let norm = ta.norm_1();
    if norm == T::zero() {
        return Ok(DenseMatrix::identity(n));
    }
    for &(m, theta) in &THETA {
        if norm <= T::lit(theta) {
            let b: &[f64] = match m {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            return finish(pade_low(&ta, b), 0);
        }
    }
    let s = (norm / T::lit(THETA_13)).log2().ceil().max(T::zero());
    let s_int = s.to_usize().ok_or_else(|| Error::Overflow("scaling exponent out of range".into()))?;
    let scaled = ta.scale(T::lit(2.0).powi(-(s_int as i32)));
    finish(pade13(&scaled), s_int)
}

fn finish<T: Real>(pq: Result<DenseMatrix<T>>, squarings: usize) -> Result<DenseMatrix<T>> {
    let mut r = pq?;
    for _ in 0..squarings {
        r = &r * &r;
        if !r.is_finite() {
            return Err(Error::Overflow("matrix exponential overflows".into()));
        }
    }
    if !r.is_finite() {
        return Err(Error::Overflow("matrix exponential overflows".into()));
    }
    Ok(r)
}

/// (V − U)⁻¹(V + U) for the odd/even split of a low-degree Padé approximant.
fn pade_low<T: Real>(a: &DenseMatrix<T>, b: &[f64]) -> Result<DenseMatrix<T>> {
    let n = a.dim();
    let ident = DenseMatrix::identity(n);
    let a2 = a * a;
    let mut powers = vec![ident.clone(), a2.clone()];
    let m = b.len() - 1;
    for _ in 2..=m / 2 {
        let next = powers.last().unwrap() * &a2;
        powers.push(next);
    }
    let mut u_inner = DenseMatrix::zeros(n);
    let mut v = DenseMatrix::zeros(n);
    for (k, p) in powers.iter().enumerate() {
        v = v.add_scaled(T::lit(b[2 * k]), p);
        u_inner = u_inner.add_scaled(T::lit(b[2 * k + 1]), p);
    }
    let u = a * &u_inner;
    solve_pade(&u, &v)
}

fn pade13<T: Real>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let n = a.dim();
    let ident = DenseMatrix::identity(n);
    let b = |k: usize| T::lit(B13[k]);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let inner_u = a6.scale(b(13)).add_scaled(b(11), &a4).add_scaled(b(9), &a2);
    let u = a * &(&a6 * &inner_u)
        .add_scaled(b(7), &a6)
        .add_scaled(b(5), &a4)
        .add_scaled(b(3), &a2)
        .add_scaled(b(1), &ident);
    let inner_v = a6.scale(b(12)).add_scaled(b(10), &a4).add_scaled(b(8), &a2);
    let v = (&a6 * &inner_v).add_scaled(b(6), &a6).add_scaled(b(4), &a4).add_scaled(b(2), &a2).add_scaled(b(0), &ident);
    solve_pade(&u, &v)
}

fn solve_pade<T: Real>(u: &DenseMatrix<T>, v: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let q = v.add_scaled(-T::one(), u);
    let p = v.add_scaled(T::one(), u);
    q.solve(&p).map_err(|_| Error::Overflow("Padé denominator is singular".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> DenseMatrix<f64> {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn zero_matrix_gives_identity() {
        assert_eq!(expm(&DenseMatrix::<f64>::zeros(3), 7.0).unwrap(), DenseMatrix::identity(3));
    }

    #[test]
    fn rotation_generator() {
        let a = m(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let r = expm(&a, std::f64::consts::FRAC_PI_2).unwrap();
        assert!(r.max_abs_diff(&a) < 1e-15);
        for &t in &[0.01, 0.3, 1.0, 2.5, 10.0, 100.0] {
            let r = expm(&a, t).unwrap();
            let want = m(&[&[t.cos(), t.sin()], &[-t.sin(), t.cos()]]);
            assert!(r.max_abs_diff(&want) < 1e-13 * t.max(1.0), "t={t}");
        }
    }

    #[test]
    fn every_pade_degree_matches_diagonal_exponential() {
        for &s in &[1e-3, 0.1, 0.5, 1.5, 4.0, 40.0] {
            let a = m(&[&[-s, 0.0], &[0.0, 0.5 * s]]);
            let r = expm(&a, 1.0).unwrap();
            assert!(((r[(0, 0)] - (-s).exp()) / (-s).exp()).abs() < 1e-13, "s={s}");
            assert!(((r[(1, 1)] - (0.5 * s).exp()) / (0.5 * s).exp()).abs() < 1e-13, "s={s}");
        }
    }

    #[test]
    fn overflow_is_reported() {
        let a = m(&[&[1.0, 0.0], &[0.0, 1.0]]);
        assert!(matches!(expm(&a, 1000.0), Err(Error::Overflow(_))));
        assert!(expm(&a, f64::NAN).is_err());
    }
}
