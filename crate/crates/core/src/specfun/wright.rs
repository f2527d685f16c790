//! Wright-type density Ψ_α(s) = Σ_{n≥0} (−s)^n / (n! Γ(1 − α − αn)), the
//! M-Wright function of order α ∈ (0, 1).
//!
//! Ψ_α is a probability density on (0, ∞) and subordinates the Mittag-Leffler
//! function: E_α(z) = ∫ Ψ_α(s) e^{zs} ds and E_{α,α}(z) = ∫ αs Ψ_α(s) e^{zs} ds.
//!
//! The power series cancels catastrophically once s^{1/(1−α)} is large, so for
//! s above `series_limit` the positive integral representation
//!
//! Ψ_α(s) = s^{α/(1−α)} / (π(1−α)) ∫₀^π K(φ) exp(−s^{1/(1−α)} K(φ)) dφ,
//! K(φ) = sin(αφ)^{α/(1−α)} sin((1−α)φ) / sin(φ)^{1/(1−α)},
//!
//! is integrated instead. It has no cancellation at all.

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOptions};
use crate::scalar::Real;
use crate::specfun::gamma::{ln_gamma, rgamma};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WrightParams<T> {
    alpha: T,
    truncation_terms: usize,
    series_limit: T,
}

impl<T: Real> WrightParams<T> {
    /// α strictly inside (0, 1); Ψ_α collapses to a point mass at α = 1.
    pub fn new(alpha: T, truncation_terms: usize) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(Error::InvalidParameter(format!("Wright order {alpha} must lie strictly in (0, 1)")));
        }
        if truncation_terms == 0 {
            return Err(Error::InvalidParameter("truncation_terms must be positive".into()));
        }
        Ok(Self { alpha, truncation_terms, series_limit: T::one() })
    }

    /// Default truncation (400 terms) for order α.
    pub fn with_alpha(alpha: T) -> Result<Self> {
        Self::new(alpha, 400)
    }

    /// Largest s evaluated through the power series.
    pub fn with_series_limit(mut self, s: T) -> Self {
        self.series_limit = s;
        self
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn truncation_terms(&self) -> usize {
        self.truncation_terms
    }
}

/// Truncated power series with a rigorous tail bound; returns (value, bound).
///
/// The coefficients 1/Γ(1 − α − αn) oscillate in sign and size, so the tail
/// is controlled through the envelope s^n Γ(αn + α)/(π n!) ≥ |term|, whose
/// ratio is eventually decreasing.
pub fn wright_psi_series<T: Real>(params: WrightParams<T>, s: T) -> Result<(T, T)> {
    if !(s >= T::zero()) {
        return Err(Error::Domain(format!("Wright density needs s >= 0, got {s}")));
    }
    let alpha = params.alpha;
    let eps = T::epsilon();
    let ln_s = s.ln();
    let mut sum = T::zero();
    let mut comp = T::zero();
    let mut abs_sum = T::zero();
    let mut prev_env = T::infinity();
    // (−s)^n / n!, by recurrence.
    let mut coeff = T::one();
    for n in 0..params.truncation_terms {
        let nf = T::from_usize(n);
        if n > 0 {
            coeff = coeff * (-s) / nf;
        }
        let term = coeff * rgamma(T::one() - alpha - alpha * nf);
        let t = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
        sum = t;
        abs_sum += term.abs() * (T::lit(4.0) + nf);
        if s == T::zero() {
            return Ok((sum + comp, eps * abs_sum));
        }
        // |1/Γ(x)| ≤ Γ(1 − x)/π for x ≤ 0; the envelope dominates every later term.
        let env = if n == 0 {
            T::infinity()
        } else {
            (nf * ln_s - ln_gamma(nf + T::one()) + ln_gamma(alpha * nf + alpha)).exp() / T::PI()
        };
        if n >= 2 && env < prev_env {
            let rho = env / prev_env;
            // Envelope ratios decrease once n exceeds the peak, so the tail is geometric.
            let next_rho =
                s / (nf + T::one()) * (ln_gamma(alpha * nf + T::lit(2.0) * alpha) - ln_gamma(alpha * nf + alpha)).exp();
            if rho < T::one() && next_rho <= rho {
                let tail = env * next_rho / (T::one() - next_rho);
                if tail <= eps * (sum + comp).abs().max(T::min_positive_value()) {
                    return Ok((sum + comp, tail + eps * abs_sum));
                }
            }
        }
        prev_env = env;
    }
    Err(Error::NonConvergence { terms: params.truncation_terms })
}

fn psi_integral<T: Real>(alpha: T, s: T) -> Result<T> {
    let one = T::one();
    let q = one / (one - alpha);
    let c = s.powf(q);
    let ln_pre = alpha * q * s.ln();
    let integrand = |phi: T| -> T {
        let sa = (alpha * phi).sin();
        let sb = ((one - alpha) * phi).sin();
        let sp = phi.sin();
        if !(sa > T::zero() && sb > T::zero() && sp > T::zero()) {
            return T::zero();
        }
        let ln_k = alpha * q * sa.ln() + sb.ln() - q * sp.ln();
        (ln_pre + ln_k - c * ln_k.exp()).exp()
    };
    // The exponent c·K is evaluated to about (1 + c·K(0))·ε relative accuracy.
    let k0 = alpha.powf(alpha * q) * (one - alpha);
    let noise = T::epsilon() * T::lit(64.0) * (one + c * k0);
    let opts = QuadOptions { abs_tol: T::min_positive_value(), rel_tol: T::lit(1e-13).max(noise), max_panels: 4000 };
    let (v, _) = integrate(integrand, T::zero(), T::PI(), opts)?;
    Ok(v / (T::PI() * (one - alpha)))
}

/// Ψ_α(s) for s ≥ 0.
///
/// Round-off negatives are clamped to zero; Ψ_α is a density.
pub fn wright_psi<T: Real>(params: WrightParams<T>, s: T) -> Result<T> {
    if !(s >= T::zero()) {
        return Err(Error::Domain(format!("Wright density needs s >= 0, got {s}")));
    }
    if s.is_infinite() {
        return Ok(T::zero());
    }
    let v = if s <= params.series_limit {
        let (v, err) = wright_psi_series(params, s)?;
        if v < T::zero() && -v <= err {
            T::zero()
        } else {
            v
        }
    } else {
        psi_integral(params.alpha, s)?
    };
    Ok(v.max(T::zero()))
}
