use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fode::Trajectory;
use crate::io::json_real;
use crate::scalar::Real;

/// Minimum number of samples inside a fitting window.
pub const MIN_FIT_SAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RateKind {
    /// Slope of log y against log t.
    AlgebraicDecay,
    /// Slope of log y against t.
    ExponentialGrowth,
}

impl RateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RateKind::AlgebraicDecay => "algebraic_decay",
            RateKind::ExponentialGrowth => "exponential_growth",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "algebraic_decay" | "AlgebraicDecay" | "algebraic" => Some(RateKind::AlgebraicDecay),
            "exponential_growth" | "ExponentialGrowth" | "exponential" => Some(RateKind::ExponentialGrowth),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateFit<T> {
    pub kind: RateKind,
    pub window: (T, T),
    pub value: T,
    pub intercept: T,
    pub r_squared: T,
    pub samples: usize,
}

impl<T: Real> RateFit<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "window": [json_real(self.window.0), json_real(self.window.1)],
            "fitted_value": json_real(self.value),
            "r_squared": json_real(self.r_squared),
            "samples": self.samples,
        })
    }
}

/// Least-squares log-slope of `values` against `times` over `window`.
pub fn fit_samples<T: Real>(times: &[T], values: &[T], window: (T, T), kind: RateKind) -> Result<RateFit<T>> {
    if times.len() != values.len() {
        return Err(Error::DimensionMismatch { expected: times.len(), found: values.len() });
    }
    let (lo, hi) = window;
    if !(lo < hi) {
        return Err(Error::InvalidParameter(format!("empty fitting window [{lo}, {hi}]")));
    }
    if kind == RateKind::AlgebraicDecay && !(lo > T::zero()) {
        return Err(Error::InvalidParameter("algebraic fits need a window in t > 0".into()));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &v) in times.iter().zip(values) {
        if t < lo || t > hi {
            continue;
        }
        let y = v.abs();
        if !(y > T::zero() && y.is_finite()) {
            return Err(Error::Domain(format!("cannot take the logarithm of {v} at t = {t}")));
        }
        xs.push(match kind {
            RateKind::AlgebraicDecay => t.ln(),
            RateKind::ExponentialGrowth => t,
        });
        ys.push(y.ln());
    }
    let n = xs.len();
    if n < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientData(format!("{n} samples in the window, need {MIN_FIT_SAMPLES}")));
    }
    let nf = T::from_usize(n);
    let mx = xs.iter().copied().sum::<T>() / nf;
    let my = ys.iter().copied().sum::<T>() / nf;
    let sxx: T = xs.iter().map(|&x| (x - mx) * (x - mx)).sum();
    let sxy: T = xs.iter().zip(&ys).map(|(&x, &y)| (x - mx) * (y - my)).sum();
    let syy: T = ys.iter().map(|&y| (y - my) * (y - my)).sum();
    if !(sxx > T::zero()) {
        return Err(Error::InsufficientData("all samples share one abscissa".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy > T::zero() { (sxy * sxy) / (sxx * syy) } else { T::one() };
    Ok(RateFit { kind, window, value: slope, intercept: my - slope * mx, r_squared, samples: n })
}

/// Fit of the state norm of a trajectory; the window must lie inside the grid.
pub fn fit_trajectory<T: Real>(traj: &Trajectory<T>, window: (T, T), kind: RateKind) -> Result<RateFit<T>> {
    let t_end = traj.grid.t_end();
    if window.0 < T::zero() || window.1 > t_end * (T::one() + T::lit(8.0) * T::epsilon()) {
        return Err(Error::InvalidParameter(format!("window [{}, {}] is not inside [0, {t_end}]", window.0, window.1)));
    }
    fit_samples(&traj.times, &traj.norms(), window, kind)
}

/// Fitted exponent (AlgebraicDecay) or rate (ExponentialGrowth) of ‖u(t)‖.
pub fn fit_rate<T: Real>(traj: &Trajectory<T>, window: (T, T), kind: RateKind) -> Result<T> {
    fit_trajectory(traj, window, kind).map(|f| f.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
    }

    #[test]
    fn exact_power_law() {
        let t = log_grid(1.0, 100.0, 50);
        let v: Vec<f64> = t.iter().map(|x| 3.0 * x.powf(-0.5)).collect();
        let f = fit_samples(&t, &v, (1.0, 100.0), RateKind::AlgebraicDecay).unwrap();
        assert!((f.value + 0.5).abs() < 1e-12);
        assert!((f.intercept - 3.0f64.ln()).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exact_exponential() {
        let t: Vec<f64> = (0..40).map(|i| i as f64 * 0.25).collect();
        let v: Vec<f64> = t.iter().map(|x| (0.3 * x).exp()).collect();
        let f = fit_samples(&t, &v, (0.0, 10.0), RateKind::ExponentialGrowth).unwrap();
        assert!((f.value - 0.3).abs() < 1e-12);
    }

    #[test]
    fn too_few_samples() {
        let t: Vec<f64> = (1..=9).map(f64::from).collect();
        let v = vec![1.0; 9];
        assert!(matches!(fit_samples(&t, &v, (1.0, 9.0), RateKind::AlgebraicDecay), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn parses_kinds() {
        assert_eq!(RateKind::parse("algebraic_decay"), Some(RateKind::AlgebraicDecay));
        assert_eq!(RateKind::parse(RateKind::ExponentialGrowth.as_str()), Some(RateKind::ExponentialGrowth));
        assert_eq!(RateKind::parse("linear"), None);
    }
}
