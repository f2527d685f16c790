//! Scalar Duhamel solutions and the product-integration weights they share
//! with the predictor–corrector solver.
//!
//! The memory kernel is K(τ) = τ^{α−1} E_{α,α}(λτ^α). Its first two moments
//! have closed forms,
//!
//! F1(τ) = ∫₀^τ K = τ^α E_{α,α+1}(λτ^α),
//! F2(τ) = ∫₀^τ σK(σ) dσ = τ^{α+1} [E_{α,α+1} − E_{α,α+2}](λτ^α),
//!
//! so integrating K against a piecewise-linear interpolant is exact.

use crate::error::{Error, Result};
use crate::fode::grid::TimeGrid;
use crate::fode::trajectory::{Scheme, Trajectory};
use crate::scalar::{cpow_real, creal, Real, C};
use crate::specfun::{ml, rgamma, MlParams};

/// (a + h)^p − a^p for a ≥ 0, h > 0 without cancellation.
pub(crate) fn pow_diff<T: Real>(a: T, h: T, p: T) -> T {
    if a == T::zero() {
        return h.powf(p);
    }
    a.powf(p) * (p * (h / a).ln_1p()).exp_m1()
}

/// Kernel moments (F1, F2) at lag τ for a fixed λ.
#[derive(Clone, Copy, Debug)]
pub(crate) struct KernelMoments<T> {
    alpha: T,
    lambda: C<T>,
    first: MlParams<T>,
    second: MlParams<T>,
    g1: T,
    g2: T,
}

impl<T: Real> KernelMoments<T> {
    pub fn new(alpha: T, lambda: C<T>) -> Result<Self> {
        Ok(Self {
            alpha,
            lambda,
            first: MlParams::new(alpha, alpha + T::one())?,
            second: MlParams::new(alpha, alpha + T::lit(2.0))?,
            g1: rgamma(alpha + T::one()),
            g2: alpha * rgamma(alpha + T::lit(2.0)),
        })
    }

    pub fn is_pure_power(&self) -> bool {
        self.lambda.re == T::zero() && self.lambda.im == T::zero()
    }

    pub fn at(&self, tau: T) -> Result<(C<T>, C<T>)> {
        if tau == T::zero() {
            return Ok((C::new(T::zero(), T::zero()), C::new(T::zero(), T::zero())));
        }
        let ta = tau.powf(self.alpha);
        if self.is_pure_power() {
            return Ok((creal(ta * self.g1), creal(ta * tau * self.g2)));
        }
        let z = self.lambda * ta;
        let e1 = ml(self.first, z)?.value;
        let e2 = ml(self.second, z)?.value;
        Ok((e1 * ta, (e1 - e2) * (ta * tau)))
    }

    /// Interval weights (left node, right node) on lags [a, a + h].
    pub fn interval(&self, a: T, h: T, fa: (C<T>, C<T>), fb: (C<T>, C<T>)) -> (C<T>, C<T>) {
        let b = a + h;
        if self.is_pure_power() {
            let d1 = creal(pow_diff(a, h, self.alpha) * self.g1);
            let d2 = creal(pow_diff(a, h, self.alpha + T::one()) * self.g2);
            return ((d2 - d1 * a) / h, (d1 * b - d2) / h);
        }
        let d1 = fb.0 - fa.0;
        let d2 = fb.1 - fa.1;
        ((d2 - d1 * a) / h, (d1 * b - d2) / h)
    }

    /// ∫_a^{a+h} K for the rectangle (predictor) rule.
    pub fn rectangle(&self, a: T, h: T, fa: (C<T>, C<T>), fb: (C<T>, C<T>)) -> C<T> {
        if self.is_pure_power() {
            return creal(pow_diff(a, h, self.alpha) * self.g1);
        }
        fb.0 - fa.0
    }

    /// Homogeneous factor E_α(λt^α).
    pub fn relaxation(&self, t: T) -> Result<C<T>> {
        if self.is_pure_power() || t == T::zero() {
            return Ok(creal(T::one()));
        }
        Ok(ml(MlParams::classical(self.alpha)?, self.lambda * t.powf(self.alpha))?.value)
    }
}

/// Hat-function weights w_j with Σ_j w_j f(t_j) = ∫₀^{t_n} K(t_n − s) f̃(s) ds
/// for the piecewise-linear interpolant f̃ of f on `nodes[..=n]`.
pub(crate) fn hat_weights<T: Real>(
    kernel: &KernelMoments<T>,
    nodes: &[T],
    n: usize,
    moments: &[(C<T>, C<T>)],
) -> Vec<C<T>> {
    let zero = C::new(T::zero(), T::zero());
    let mut w = vec![zero; n + 1];
    for j in 0..n {
        let a = nodes[n] - nodes[j + 1];
        let (l, r) = kernel.interval(a, nodes[j + 1] - nodes[j], moments[j + 1], moments[j]);
        w[j] += l;
        w[j + 1] += r;
    }
    w
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha <= T::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1]")))
    }
}

/// u(t) = E_α(λt^α)u0 + ∫₀^t (t−s)^{α−1}E_{α,α}(λ(t−s)^α) f(s) ds on every
/// node of `grid`, with f replaced by its piecewise-linear interpolant and the
/// kernel integrated exactly.
///
/// States are stored as `[Re u, Im u]`.
pub fn scalar_duhamel<T: Real, F: FnMut(T) -> C<T>>(
    alpha: T,
    lambda: C<T>,
    u0: C<T>,
    mut f: F,
    grid: &TimeGrid<T>,
) -> Result<Trajectory<T>> {
    check_alpha(alpha)?;
    let kernel = KernelMoments::new(alpha, lambda)?;
    let nodes = grid.nodes();
    let fv: Vec<C<T>> = nodes.iter().map(|&t| f(t)).collect();
    if fv.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::Domain("forcing is not finite on the grid".into()));
    }
    // Uniform grids need the moments at the lags m·h only.
    let uniform: Option<Vec<(C<T>, C<T>)>> = if grid.is_uniform() {
        let h = grid.step();
        Some((0..nodes.len()).map(|m| kernel.at(T::from_usize(m) * h)).collect::<Result<_>>()?)
    } else {
        None
    };
    let mut traj = Trajectory::new(*grid, alpha, Scheme::Duhamel);
    for n in 0..nodes.len() {
        let moments: Vec<(C<T>, C<T>)> = match &uniform {
            Some(table) => (0..=n).map(|j| table[n - j]).collect(),
            None => (0..=n).map(|j| kernel.at(nodes[n] - nodes[j])).collect::<Result<_>>()?,
        };
        let w = hat_weights(&kernel, &nodes, n, &moments);
        if w.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::QuadratureFailure(format!("non-finite product-integration weight at node {n}")));
        }
        let mut u = kernel.relaxation(nodes[n])? * u0;
        for (wj, fj) in w.iter().zip(&fv) {
            u += *wj * *fj;
        }
        traj.push(nodes[n], vec![u.re, u.im]);
    }
    Ok(traj)
}

/// t^α/Γ(1+α): the fractional integral of order α of the constant 1.
pub fn fractional_integral_of_one<T: Real>(alpha: T, t: T) -> T {
    cpow_real(creal(t), alpha).re * rgamma(alpha + T::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::mittag_leffler_real;

    #[test]
    fn pow_diff_is_accurate() {
        let x = 1.000001f64 - 1.0;
        let exact = 0.3 * x - 0.105 * x * x + 0.0595 * x * x * x;
        assert!((pow_diff(1.0, x, 0.3) - exact).abs() < 1e-15 * exact);
        assert_eq!(pow_diff(0.0, 4.0, 0.5), 2.0);
        assert!(pow_diff(0.5, 1e-17, 0.4) > 0.0);
    }

    #[test]
    fn weights_integrate_linear_functions_exactly() {
        let k = KernelMoments::new(0.4f64, C::new(-0.7, 0.2)).unwrap();
        let nodes: Vec<f64> = (0..=6).map(|j| (j as f64 / 6.0).powi(2) * 3.0).collect();
        let n = 6;
        let m: Vec<_> = (0..=n).map(|j| k.at(nodes[n] - nodes[j]).unwrap()).collect();
        let w = hat_weights(&k, &nodes, n, &m);
        // ∫ K(t−s)·1 ds = F1(t) and ∫ K(t−s)(t−s) ds = F2(t).
        let (f1, f2) = k.at(3.0).unwrap();
        let s0: C<f64> = w.iter().copied().sum();
        let s1: C<f64> = w.iter().zip(&nodes).map(|(wj, &tj)| *wj * (3.0 - tj)).sum();
        assert!((s0 - f1).norm() < 1e-13);
        assert!((s1 - f2).norm() < 1e-13);
    }

    #[test]
    fn homogeneous_case_is_mittag_leffler() {
        let g = TimeGrid::uniform(3.0, 30).unwrap();
        let tr = scalar_duhamel(0.7f64, creal(-1.0), creal(1.0), |_| creal(0.0), &g).unwrap();
        for (t, s) in tr.times.iter().zip(&tr.states) {
            let e = mittag_leffler_real(0.7, 1.0, -t.powf(0.7)).unwrap();
            assert!((s[0] - e).abs() < 1e-14);
            assert_eq!(s[1], 0.0);
        }
    }

    #[test]
    fn rejects_bad_order() {
        let g = TimeGrid::uniform(1.0, 4).unwrap();
        assert!(scalar_duhamel(1.5, creal(0.0), creal(1.0), |_| creal(0.0), &g).is_err());
    }

    #[test]
    fn fractional_integral_of_constant() {
        assert!((fractional_integral_of_one(0.5f64, 4.0) - 2.0 / 0.886_226_925_452_758).abs() < 1e-14);
    }
}
