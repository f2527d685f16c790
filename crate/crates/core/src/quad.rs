//! Quadrature primitives: adaptive Gauss–Kronrod (7/15) for vector-valued
//! integrands and Gauss–Legendre rules of arbitrary order.

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the 7-point rule at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Result of an adaptive integration.
#[derive(Clone, Debug)]
pub struct QuadResult<T> {
    pub value: Vec<T>,
    /// Sum of the per-panel Kronrod–Gauss differences (max norm over components).
    pub abs_error: T,
    pub evaluations: usize,
}

/// Tolerances and limits for [`integrate_vec`].
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_panels: usize,
}

impl<T: Real> Default for QuadOptions<T> {
    fn default() -> Self {
        Self { abs_tol: T::lit(1e-13), rel_tol: T::lit(1e-12), max_panels: 2000 }
    }
}

struct Panel<T> {
    a: T,
    b: T,
    value: Vec<T>,
    err: T,
}

fn gk15<T: Real, F: FnMut(T, &mut [T])>(f: &mut F, a: T, b: T, dim: usize, buf: &mut [T]) -> (Vec<T>, T) {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    let mut kron = vec![T::zero(); dim];
    let mut gauss = vec![T::zero(); dim];
    f(mid, buf);
    for d in 0..dim {
        kron[d] = buf[d] * T::lit(WGK[7]);
        gauss[d] = buf[d] * T::lit(WG[3]);
    }
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        for &x in &[mid - dx, mid + dx] {
            f(x, buf);
            for d in 0..dim {
                kron[d] += buf[d] * T::lit(WGK[j]);
                if j % 2 == 1 {
                    gauss[d] += buf[d] * T::lit(WG[j / 2]);
                }
            }
        }
    }
    let mut err = T::zero();
    for d in 0..dim {
        kron[d] *= half;
        gauss[d] *= half;
        err = err.max((kron[d] - gauss[d]).abs());
    }
    (kron, err)
}

/// Adaptive Gauss–Kronrod integration of `f: [a, b] → R^dim`.
///
/// `f(x, out)` writes the integrand into `out`. Stops when the summed error
/// estimate is below `max(abs_tol, rel_tol·‖I‖∞)`.
pub fn integrate_vec<T: Real, F: FnMut(T, &mut [T])>(
    mut f: F,
    a: T,
    b: T,
    dim: usize,
    opts: QuadOptions<T>,
) -> Result<QuadResult<T>> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::QuadratureFailure("infinite integration limit".into()));
    }
    let mut buf = vec![T::zero(); dim];
    if a == b {
        return Ok(QuadResult { value: vec![T::zero(); dim], abs_error: T::zero(), evaluations: 0 });
    }
    let (v, e) = gk15(&mut f, a, b, dim, &mut buf);
    let mut panels = vec![Panel { a, b, value: v, err: e }];
    let mut evaluations = 15;
    loop {
        let mut total = vec![T::zero(); dim];
        let mut err = T::zero();
        for p in &panels {
            for d in 0..dim {
                total[d] += p.value[d];
            }
            err += p.err;
        }
        if total.iter().chain(std::iter::once(&err)).any(|x| !x.is_finite()) {
            return Err(Error::QuadratureFailure("non-finite integrand".into()));
        }
        let scale = total.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        let target = opts.abs_tol.max(opts.rel_tol * scale);
        if err <= target {
            return Ok(QuadResult { value: total, abs_error: err, evaluations });
        }
        if panels.len() >= opts.max_panels {
            return Err(Error::QuadratureFailure(format!(
                "error estimate {:.3e} above target {:.3e} after {} panels",
                err.as_f64(),
                target.as_f64(),
                panels.len()
            )));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let p = panels.swap_remove(worst);
        let m = (p.a + p.b) * T::lit(0.5);
        if m <= p.a || m >= p.b {
            return Err(Error::QuadratureFailure("panel width reached machine resolution".into()));
        }
        let (v1, e1) = gk15(&mut f, p.a, m, dim, &mut buf);
        let (v2, e2) = gk15(&mut f, m, p.b, dim, &mut buf);
        evaluations += 30;
        panels.push(Panel { a: p.a, b: m, value: v1, err: e1 });
        panels.push(Panel { a: m, b: p.b, value: v2, err: e2 });
    }
}

/// Scalar convenience wrapper; returns (value, error estimate).
pub fn integrate<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, opts: QuadOptions<T>) -> Result<(T, T)> {
    let r = integrate_vec(|x, out: &mut [T]| out[0] = f(x), a, b, 1, opts)?;
    Ok((r.value[0], r.abs_error))
}

/// Complex-valued integrand over a real interval.
pub fn integrate_complex<T: Real, F: FnMut(T) -> C<T>>(
    mut f: F,
    a: T,
    b: T,
    opts: QuadOptions<T>,
) -> Result<(C<T>, T)> {
    let r = integrate_vec(
        |x, out: &mut [T]| {
            let v = f(x);
            out[0] = v.re;
            out[1] = v.im;
        },
        a,
        b,
        2,
        opts,
    )?;
    Ok((C::new(r.value[0], r.value[1]), r.abs_error))
}

/// n-point Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration
/// on the Legendre recurrence.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1);
    let mut x = vec![T::zero(); n];
    let mut w = vec![T::zero(); n];
    let nf = T::from_usize(n);
    for i in 0..n.div_ceil(2) {
        let mut z = (T::PI() * (T::from_usize(i) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (mut p0, mut p1) = (T::one(), z);
            for k in 2..=n {
                let kf = T::from_usize(k);
                let p2 = ((T::lit(2.0) * kf - T::one()) * z * p1 - (kf - T::one()) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pnm1 = if n == 1 { T::one() } else { p0 };
            dp = nf * (z * pn - pnm1) / (z * z - T::one());
            let dz = pn / dp;
            z -= dz;
            if dz.abs() <= T::epsilon() * T::lit(4.0) {
                break;
            }
        }
        if n == 1 {
            dp = T::one();
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = T::lit(2.0) / ((T::one() - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n == 1 {
        x[0] = T::zero();
        w[0] = T::lit(2.0);
    }
    (x, w)
}
