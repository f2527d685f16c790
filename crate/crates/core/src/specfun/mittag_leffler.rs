//! Two-parameter Mittag-Leffler function E_{α,β}(z) = Σ z^k / Γ(αk + β).
//!
//! Three evaluation routes are combined:
//!
//! * the power series, exact in exact arithmetic but subject to cancellation
//!   of order ε·E_α(|z|) ≈ ε·exp(|z|^{1/α}) once z leaves the positive axis;
//! * the large-|z| expansion
//!   E_{α,β}(z) ≈ (1/α) z^{(1−β)/α} exp(z^{1/α}) − Σ_{k=1}^p z^{−k}/Γ(β − αk),
//!   whose divergent tail, optimally truncated, leaves an error of order
//!   exp(−|z|^{1/α});
//! * a Laplace-inversion contour integral, slower but accurate to a few ulps
//!   in absolute terms everywhere, used where the other two fall short.
//!
//! Because the first two error scales are functions of x = |z|^{1/α}, the
//! regime radii are expressed in that variable. Every result carries its own
//! error estimate.

use crate::error::{Error, Result};
use crate::quad::{integrate_vec, QuadOptions};
use crate::scalar::{cpow_real, creal, principal_arg, CompensatedSum, Real, C};
use crate::specfun::gamma::{ln_gamma, rgamma};

/// Order α ∈ (0, 1] and second parameter β > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MlParams<T> {
    alpha: T,
    beta: T,
}

impl<T: Real> MlParams<T> {
    pub fn new(alpha: T, beta: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha <= T::one()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1]")));
        }
        if !(beta > T::zero() && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!("beta = {beta} must be positive")));
        }
        Ok(Self { alpha, beta })
    }

    /// E_α = E_{α,1}.
    pub fn classical(alpha: T) -> Result<Self> {
        Self::new(alpha, T::one())
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }
}

/// Which evaluation route produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Regime {
    Series,
    Asymptotic,
    /// Several routes (series, expansion, contour integral) were evaluated;
    /// the one with the smallest error estimate won.
    Hybrid,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Series => "series",
            Regime::Asymptotic => "asymptotic",
            Regime::Hybrid => "hybrid",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalResult<T> {
    pub value: C<T>,
    pub est_abs_error: T,
    pub regime: Regime,
}

/// Tunables of the regime dispatcher.
#[derive(Clone, Copy, Debug)]
pub struct MlConfig<T> {
    /// Below this value of |z|^{1/α} only the series is used.
    pub r0: T,
    /// Above this value of |z|^{1/α} only the asymptotic expansion is used.
    pub r1: T,
    /// Term cap for the power series.
    pub series_cap: usize,
    /// Term cap for the asymptotic sum.
    pub asymptotic_cap: usize,
    /// Relative accuracy considered satisfactory; a series result worse than
    /// this also triggers the asymptotic route.
    pub target_rel: T,
}

impl<T: Real> Default for MlConfig<T> {
    fn default() -> Self {
        Self {
            r0: T::lit(8.0),
            r1: T::lit(40.0),
            series_cap: 100_000,
            asymptotic_cap: 2_000,
            target_rel: T::lit(1e-10),
        }
    }
}

// Magnitudes below this use direct z^k·(1/Γ); larger arguments go through logs.
const DIRECT_GAMMA_ARG: f64 = 140.0;
const DIRECT_POW_LIMIT: f64 = 1e250;

/// Power-series evaluation, stopped once a rigorous geometric bound on the
/// remainder drops below the absolute tolerance `tol`.
///
/// The term ratio |z|·Γ(α(k−1)+β)/Γ(αk+β) is non-increasing in k (log-convexity
/// of Γ), so after the first ratio below one the tail is dominated by a
/// geometric series in that ratio.
pub fn ml_series<T: Real>(params: MlParams<T>, z: C<T>, tol: T) -> Result<EvalResult<T>> {
    if !(tol > T::zero()) {
        return Err(Error::InvalidParameter("series tolerance must be positive".into()));
    }
    ml_series_capped(params, z, tol, T::zero(), MlConfig::<T>::default().series_cap)
}

/// Series stopped once the tail bound is below `abs_tol` or below
/// `rel_tol·|partial sum|`.
pub(crate) fn ml_series_capped<T: Real>(
    params: MlParams<T>,
    z: C<T>,
    abs_tol: T,
    rel_tol: T,
    cap: usize,
) -> Result<EvalResult<T>> {
    if !(abs_tol > T::zero() || rel_tol > T::zero()) {
        return Err(Error::InvalidParameter("series tolerance must be positive".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("non-finite argument".into()));
    }
    let (alpha, beta) = (params.alpha, params.beta);
    let eps = T::epsilon();
    let r = z.norm();
    let mut sum = CompensatedSum::new();
    let first = creal(rgamma(beta));
    sum.add(first);
    if r == T::zero() {
        return Ok(EvalResult { value: sum.value(), est_abs_error: T::zero(), regime: Regime::Series });
    }
    let ln_r = r.ln();
    let theta = principal_arg(z);
    let mut rounding = first.norm() * T::lit(16.0);
    let mut zpow = z;
    let mut log_mode = false;
    let mut prev_abs = first.norm();
    for k in 1..cap {
        let kf = T::from_usize(k);
        let arg = alpha * kf + beta;
        if !log_mode && (arg > T::lit(DIRECT_GAMMA_ARG) || zpow.norm() > T::lit(DIRECT_POW_LIMIT)) {
            log_mode = true;
        }
        let (term, weight) = if log_mode {
            let lg = ln_gamma(arg);
            let lmag = kf * ln_r - lg;
            (C::from_polar(lmag.exp(), kf * theta), T::lit(16.0) + (kf * ln_r).abs() + lg.abs())
        } else {
            let t = zpow * rgamma(arg);
            zpow *= z;
            (t, T::lit(16.0) + T::lit(2.0) * kf)
        };
        sum.add(term);
        let a = term.norm();
        rounding += weight * a;
        // Ratio is non-increasing, so the first ratio below one certifies the tail.
        if prev_abs > T::zero() {
            let rho = a / prev_abs;
            if rho < T::one() {
                let tail = a * rho / (T::one() - rho);
                let value = sum.value();
                if tail <= abs_tol || tail <= rel_tol * value.norm() {
                    let est = tail + eps * (rounding + value.norm());
                    return Ok(EvalResult { value, est_abs_error: est, regime: Regime::Series });
                }
            }
        } else if a == T::zero() && kf * alpha > T::lit(2.0) * r.powf(alpha.recip()) {
            // Terms underflowed past the peak.
            let value = sum.value();
            return Ok(EvalResult { value, est_abs_error: eps * (rounding + value.norm()), regime: Regime::Series });
        }
        prev_abs = a;
    }
    Err(Error::NonConvergence { terms: cap })
}

/// Whether the exponential contribution (1/α) z^{(1−β)/α} exp(z^{1/α}) belongs
/// to the expansion at this argument.
///
/// The term is dominant for |arg z| < απ/2 and exponentially small between
/// απ/2 and απ; keeping it up to απ makes the expansion uniformly valid across
/// the sector boundary. At α = 1 it is the entire function exp(z) and is
/// kept everywhere.
fn exponential_term_active<T: Real>(alpha: T, theta: T) -> bool {
    alpha == T::one() || theta.abs() < alpha * T::PI()
}

fn exponential_term<T: Real>(alpha: T, beta: T, z: C<T>) -> C<T> {
    let inv = alpha.recip();
    let w = cpow_real(z, inv);
    let log_z = C::new(z.norm().ln(), principal_arg(z));
    let expo = w + log_z * ((T::one() - beta) * inv) - creal(alpha.ln());
    expo.exp()
}

struct AsymptoticSum<T> {
    value: C<T>,
    est: T,
}

/// Core of the large-|z| expansion.
///
/// With `fixed = Some(p)` exactly p correction terms are summed. With `None`
/// the sum runs until the terms fall below `stop_rel·|value|` or start growing
/// (optimal truncation of the divergent series).
fn asymptotic_core<T: Real>(
    params: MlParams<T>,
    z: C<T>,
    fixed: Option<usize>,
    cap: usize,
    stop_rel: T,
) -> Result<AsymptoticSum<T>> {
    let (alpha, beta) = (params.alpha, params.beta);
    let eps = T::epsilon();
    let theta = principal_arg(z);
    let x = z.norm().powf(alpha.recip());
    let mut total = CompensatedSum::new();
    let mut rounding = T::zero();
    let mut omitted = T::zero();
    if exponential_term_active(alpha, theta) {
        let e = exponential_term(alpha, beta, z);
        if !(e.re.is_finite() && e.im.is_finite()) {
            return Err(Error::Overflow(format!("exp(z^(1/alpha)) overflows at |z| = {:.6e}", z.norm().as_f64())));
        }
        // exp of a large argument carries a relative error ~ ε·|z^{1/α}|.
        rounding += e.norm() * (T::lit(8.0) + T::lit(4.0) * x);
        total.add(e);
    } else {
        // Switching the subdominant term off beyond απ costs at most its size there.
        omitted = alpha.recip() * z.norm().powf((T::one() - beta) / alpha) * (-x).exp();
    }
    let zinv = z.inv();
    let ln_r = z.norm().ln();
    // At α = 1 with integer β every correction with β − k ≤ 0 is exactly zero.
    let terminates = alpha == T::one() && beta.fract() == T::zero();
    let mut zpow = zinv;
    let mut prev_env = T::infinity();
    let mut k = 1usize;
    let est;
    loop {
        let kf = T::from_usize(k);
        let arg = beta - alpha * kf;
        let term = -(zpow * rgamma(arg));
        let a = term.norm();
        match fixed {
            Some(p) => {
                if k > p {
                    // First non-vanishing correction beyond the summed ones.
                    if a > T::zero() || k > p + 8 {
                        est = a;
                        break;
                    }
                } else {
                    total.add(term);
                    rounding += a * (T::lit(4.0) + kf);
                }
            }
            None => {
                if terminates && arg <= T::zero() {
                    est = T::zero();
                    break;
                }
                // |1/Γ(x)| ≤ Γ(1 − x)/π for x < 0: a smooth bound that does not
                // vanish near poles, so truncation decisions cannot be fooled
                // by an accidentally tiny term.
                let env = if arg < T::zero() { (ln_gamma(T::one() - arg) - kf * ln_r).exp() / T::PI() } else { a };
                // Near the Stokes lines the optimally truncated remainder exceeds
                // the first omitted term by a factor growing like √k.
                if arg < T::zero() && env > prev_env {
                    est = env * kf.sqrt();
                    break;
                }
                total.add(term);
                rounding += a * (T::lit(4.0) + kf);
                if arg < T::zero() && (env <= stop_rel * total.value().norm() || k >= cap) {
                    est = env * kf.sqrt();
                    break;
                }
                if arg < T::zero() {
                    prev_env = env;
                }
            }
        }
        zpow *= zinv;
        k += 1;
    }
    let value = total.value();
    Ok(AsymptoticSum { value, est: est + omitted + eps * (rounding + value.norm()) })
}

/// Large-|z| expansion with exactly `p` correction terms.
///
/// The error estimate is the magnitude of the first non-vanishing correction
/// beyond the p-th, plus rounding.
pub fn ml_asymptotic<T: Real>(params: MlParams<T>, z: C<T>, p: usize) -> Result<EvalResult<T>> {
    if p == 0 {
        return Err(Error::InvalidParameter("asymptotic expansion needs p >= 1".into()));
    }
    if z.norm() == T::zero() {
        return Err(Error::Domain("asymptotic expansion undefined at z = 0".into()));
    }
    let s = asymptotic_core(params, z, Some(p), p, T::zero())?;
    Ok(EvalResult { value: s.value, est_abs_error: s.est, regime: Regime::Asymptotic })
}

/// Large-|z| expansion with optimal truncation.
pub fn ml_asymptotic_auto<T: Real>(params: MlParams<T>, z: C<T>, cap: usize) -> Result<EvalResult<T>> {
    if z.norm() == T::zero() {
        return Err(Error::Domain("asymptotic expansion undefined at z = 0".into()));
    }
    let s = asymptotic_core(params, z, None, cap, T::epsilon() * T::lit(0.01))?;
    Ok(EvalResult { value: s.value, est_abs_error: s.est, regime: Regime::Asymptotic })
}

/// Laplace-inversion integral
/// E_{α,β}(z) = [residue at s* = z^{1/α}] + (1/2πi) ∫_C e^s s^{α−β} / (s^α − z) ds,
/// where C runs in from ∞·e^{−iδ}, around the arc |s| = ε and out to ∞·e^{iδ}.
///
/// δ ∈ {0.6π, π} is chosen at least 0.2π away from arg s*, so the integrand
/// stays of unit size and the absolute error is a small multiple of ε_mach
/// whatever the cancellation in the series. The residue
/// (1/α) s*^{1−β} e^{s*} is added when s* lies inside the sector |arg s| < δ.
pub fn ml_integral<T: Real>(params: MlParams<T>, z: C<T>) -> Result<EvalResult<T>> {
    let (alpha, beta) = (params.alpha, params.beta);
    let r = z.norm();
    if !(r > T::zero() && r.is_finite()) {
        return Err(Error::Domain("integral route needs 0 < |z| < inf".into()));
    }
    let eps = T::epsilon();
    let pi = T::PI();
    let x = r.powf(alpha.recip());
    let phi_star = principal_arg(z) / alpha;
    let delta = if phi_star.abs() > T::lit(0.8) * pi { T::lit(0.6) * pi } else { pi };
    let radius = T::one().min(x * T::lit(0.25));
    let f = |rho: T, phi: T| -> C<T> {
        let s = C::from_polar(rho, phi);
        let sa = C::from_polar(rho.powf(alpha), alpha * phi);
        let sab = C::from_polar(rho.powf(alpha - beta), (alpha - beta) * phi);
        s.exp() * sab / (sa - z)
    };
    let opts = QuadOptions { abs_tol: eps * T::lit(32.0), rel_tol: T::zero(), max_panels: 1000 };
    let (up, down) = (C::from_polar(T::one(), delta), C::from_polar(T::one(), -delta));
    let reach = radius + T::lit(45.0) / (-delta.cos());
    let rays = integrate_vec(
        |rho, out: &mut [T]| {
            let (a, b) = (f(rho, delta), f(rho, -delta));
            let v = a * up - b * down;
            out[0] = v.re;
            out[1] = v.im;
            out[2] = a.norm() + b.norm();
        },
        radius,
        reach,
        3,
        opts,
    )?;
    let arc = integrate_vec(
        |phi, out: &mut [T]| {
            let v = f(radius, phi) * C::from_polar(radius, phi) * C::new(T::zero(), T::one());
            out[0] = v.re;
            out[1] = v.im;
            out[2] = v.norm();
        },
        -delta,
        delta,
        3,
        opts,
    )?;
    let contour = C::new(rays.value[0] + arc.value[0], rays.value[1] + arc.value[1]);
    let two_pi = T::lit(2.0) * pi;
    let mut value = contour / C::new(T::zero(), two_pi);
    let l1 = (rays.value[2] + arc.value[2]) / two_pi;
    let mut est = (rays.abs_error + arc.abs_error) / two_pi + T::lit(16.0) * eps * l1;
    if phi_star.abs() < delta && x > radius {
        let e = exponential_term(alpha, beta, z);
        if !(e.re.is_finite() && e.im.is_finite()) {
            return Err(Error::Overflow(format!("exp(z^(1/alpha)) overflows at |z| = {:.6e}", r.as_f64())));
        }
        est += e.norm() * eps * (T::lit(8.0) + T::lit(4.0) * x);
        value += e;
    }
    Ok(EvalResult { value, est_abs_error: est + eps * value.norm(), regime: Regime::Hybrid })
}

/// E_{α,β}(z) with the default dispatcher configuration.
pub fn ml<T: Real>(params: MlParams<T>, z: C<T>) -> Result<EvalResult<T>> {
    ml_with(params, z, &MlConfig::default())
}

/// E_{α,β}(z): series for |z|^{1/α} ≤ r0, asymptotic expansion for
/// |z|^{1/α} ≥ r1, and in between whichever carries the smaller error
/// estimate. Whenever the candidates miss the relative target the contour
/// integral is evaluated as well and competes on the same terms.
pub fn ml_with<T: Real>(params: MlParams<T>, z: C<T>, cfg: &MlConfig<T>) -> Result<EvalResult<T>> {
    let r = z.norm();
    if r == T::zero() {
        return ml_series_capped(params, z, T::one(), T::zero(), cfg.series_cap);
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("non-finite argument".into()));
    }
    let x = r.powf(params.alpha.recip());
    let meets = |e: &EvalResult<T>| e.est_abs_error <= cfg.target_rel * e.value.norm();
    let mut candidates: Vec<Result<EvalResult<T>>> = Vec::with_capacity(3);
    if x < cfg.r1 {
        candidates.push(ml_series_capped(
            params,
            z,
            T::min_positive_value(),
            T::epsilon() * T::lit(0.125),
            cfg.series_cap,
        ));
    }
    if x > cfg.r0 {
        candidates.push(ml_asymptotic_auto(params, z, cfg.asymptotic_cap));
    }
    if !candidates.iter().any(|c| matches!(c, Ok(e) if meets(e))) {
        candidates.push(ml_integral(params, z));
    }
    let several = candidates.len() > 1;
    let mut best: Option<EvalResult<T>> = None;
    let mut first_err = None;
    for c in candidates {
        match c {
            Ok(e) => {
                if best.is_none_or(|b| e.est_abs_error < b.est_abs_error) {
                    best = Some(e);
                }
            }
            Err(err) => {
                first_err.get_or_insert(err);
            }
        }
    }
    match best {
        Some(b) if several => Ok(EvalResult { regime: Regime::Hybrid, ..b }),
        Some(b) => Ok(b),
        None => Err(first_err.expect("at least one route was tried")),
    }
}

/// Convenience: value of E_{α,β}(z), discarding diagnostics.
pub fn mittag_leffler<T: Real>(alpha: T, beta: T, z: C<T>) -> Result<C<T>> {
    Ok(ml(MlParams::new(alpha, beta)?, z)?.value)
}

/// Real-argument convenience returning the real part (exact for real z).
pub fn mittag_leffler_real<T: Real>(alpha: T, beta: T, x: T) -> Result<T> {
    Ok(mittag_leffler(alpha, beta, creal(x))?.re)
}
