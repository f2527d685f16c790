//! Two-component systems: trace–determinant classification, diffusion-driven
//! instability windows and the critical diffusion ratio.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::json_real;
use crate::linalg::quadratic_eigenvalues;
use crate::scalar::{principal_arg, Real, C};
use crate::stability::verdict::{StabilityVerdict, Status};

/// Classification of [[a, b], [c, d]] from 𝒯 = a + d and 𝒟 = ad − bc alone.
///
/// Stable iff 𝒟 > 0 and either 𝒯 < 0, or 𝒯 ≥ 0 with complex eigenvalues and
/// 𝒯/(2√𝒟) < cos(απ/2). Exact boundary cases and zero eigenvalues are Marginal.
pub fn trace_det_classify<T: Real>(alpha: T, a: T, b: T, c: T, d: T) -> StabilityVerdict<T> {
    let tr = a + d;
    let det = a * d - b * c;
    let eigs = quadratic_eigenvalues(a, b, c, d).to_vec();
    let status = if det < T::zero() {
        Status::Unstable
    } else if det == T::zero() {
        if tr > T::zero() {
            Status::Unstable
        } else {
            Status::Marginal
        }
    } else if tr < T::zero() {
        Status::Stable
    } else if tr * tr >= T::lit(4.0) * det {
        Status::Unstable
    } else {
        let ratio = tr / (T::lit(2.0) * det.sqrt());
        let bound = (alpha * T::FRAC_PI_2()).cos();
        if ratio < bound {
            Status::Stable
        } else if ratio > bound {
            Status::Unstable
        } else {
            Status::Marginal
        }
    };
    let half = alpha * T::FRAC_PI_2();
    let mut margin = T::infinity();
    let mut witness: Option<C<T>> = None;
    for &z in &eigs {
        let nonzero = z.re != T::zero() || z.im != T::zero();
        let m = if nonzero { principal_arg(z).abs() - half } else { -half };
        margin = margin.min(m);
        if status == Status::Unstable && nonzero && m < T::zero() && witness.is_none_or(|w| z.re > w.re) {
            witness = Some(z);
        }
    }
    if status == Status::Unstable && witness.is_none() {
        witness = eigs.iter().copied().max_by(|x, y| x.re.partial_cmp(&y.re).unwrap_or(std::cmp::Ordering::Equal));
    }
    StabilityVerdict { status, witness, sector_margin: margin, eigenvalues: eigs }
}

/// Mode carrying a diffusion-driven instability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness<T> {
    /// Laplacian mode index, when the scan was given a mode list.
    pub k: Option<usize>,
    pub mu: T,
    pub lambda: C<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TuringReport<T> {
    pub homogeneous: StabilityVerdict<T>,
    /// [Λ₋, Λ₊] ∩ [0, μ_max] in Laplacian-eigenvalue units.
    pub window: Option<(T, T)>,
    pub witnesses: Vec<Witness<T>>,
    /// Some mode with 𝒟_k > 0 has complex eigenvalues outside the sector
    /// (𝒯_k/(2√𝒟_k) > cos(απ/2)); reported only, never turned into a verdict.
    pub deferred_case: bool,
}

impl<T: Real> TuringReport<T> {
    pub fn to_json(&self) -> Value {
        json!({
            "homogeneous": self.homogeneous.to_json(),
            "window": self.window.map(|(lo, hi)| json!([json_real(lo), json_real(hi)])),
            "witnesses": self.witnesses.iter().map(|w| json!({
                "k": w.k,
                "mu": json_real(w.mu),
                "lambda_re": json_real(w.lambda.re),
                "lambda_im": json_real(w.lambda.im),
            })).collect::<Vec<_>>(),
            "deferred_case": self.deferred_case,
        })
    }
}

/// 𝒟_k(μ) = 𝒟 − μ(D₁d + D₂a) + D₁D₂μ², the determinant of the mode matrix.
pub fn mode_determinant<T: Real>(a: T, b: T, c: T, d: T, d1: T, d2: T, mu: T) -> T {
    (a * d - b * c) - mu * (d1 * d + d2 * a) + d1 * d2 * mu * mu
}

/// Roots Λ₋ ≤ Λ₊ of 𝒟_k(μ) = 0 when the window condition holds:
/// D₁d + D₂a > 0 and (D₁d + D₂a)² > 4D₁D₂𝒟.
pub fn turing_roots<T: Real>(a: T, b: T, c: T, d: T, d1: T, d2: T) -> Option<(T, T)> {
    let det = a * d - b * c;
    let s = d1 * d + d2 * a;
    let p = d1 * d2;
    let disc = s * s - T::lit(4.0) * p * det;
    if !(s > T::zero() && disc > T::zero()) {
        return None;
    }
    let hi = (s + disc.sqrt()) / (T::lit(2.0) * p);
    // Vieta avoids cancellation in the smaller root.
    let lo = det / (p * hi);
    Some((lo, hi))
}

fn check_diffusion<T: Real>(d1: T, d2: T) -> Result<()> {
    if d1 > T::zero() && d2 > T::zero() && d1.is_finite() && d2.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("diffusion coefficients must be positive, got ({d1}, {d2})")))
    }
}

#[allow(clippy::too_many_arguments)]
fn mode_eigenvalues<T: Real>(a: T, b: T, c: T, d: T, d1: T, d2: T, mu: T) -> [C<T>; 2] {
    quadratic_eigenvalues(a - d1 * mu, b, c, d - d2 * mu)
}

#[allow(clippy::too_many_arguments)]
fn deferred_case<T: Real>(alpha: T, a: T, b: T, c: T, d: T, d1: T, d2: T, mu_max: T) -> bool {
    let tr = a + d;
    if tr <= T::zero() {
        return false;
    }
    let bound = (alpha * T::FRAC_PI_2()).cos();
    let top = mu_max.min(tr / (d1 + d2));
    let samples = 4000;
    (0..=samples).any(|i| {
        let mu = top * T::from_usize(i) / T::from_usize(samples);
        let tk = tr - mu * (d1 + d2);
        let dk = mode_determinant(a, b, c, d, d1, d2, mu);
        dk > T::zero() && tk > T::zero() && T::lit(4.0) * dk > tk * tk && tk / (T::lit(2.0) * dk.sqrt()) > bound
    })
}

/// Diffusion-driven instability scan of [[a, b], [c, d]] with diffusion
/// (D₁, D₂). The witness is the vertex of the 𝒟_k parabola, where the
/// unstable eigenvalue is largest.
#[allow(clippy::too_many_arguments)]
pub fn turing_scan<T: Real>(alpha: T, a: T, b: T, c: T, d: T, d1: T, d2: T, mu_max: T) -> Result<TuringReport<T>> {
    turing_scan_impl(alpha, a, b, c, d, d1, d2, mu_max, None)
}

/// As [`turing_scan`], with witnesses taken from the given Laplacian
/// eigenvalues μ_k that fall inside the window.
#[allow(clippy::too_many_arguments)]
pub fn turing_scan_with_modes<T: Real>(
    alpha: T,
    a: T,
    b: T,
    c: T,
    d: T,
    d1: T,
    d2: T,
    mus: &[T],
) -> Result<TuringReport<T>> {
    let mu_max = mus.iter().copied().fold(T::zero(), T::max);
    turing_scan_impl(alpha, a, b, c, d, d1, d2, mu_max, Some(mus))
}

#[allow(clippy::too_many_arguments)]
fn turing_scan_impl<T: Real>(
    alpha: T,
    a: T,
    b: T,
    c: T,
    d: T,
    d1: T,
    d2: T,
    mu_max: T,
    mus: Option<&[T]>,
) -> Result<TuringReport<T>> {
    check_diffusion(d1, d2)?;
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1]")));
    }
    if !(mu_max >= T::zero()) {
        return Err(Error::InvalidParameter("mu_max must be nonnegative".into()));
    }
    let homogeneous = trace_det_classify(alpha, a, b, c, d);
    if homogeneous.status != Status::Stable {
        return Ok(TuringReport { homogeneous, window: None, witnesses: Vec::new(), deferred_case: false });
    }
    let deferred = deferred_case(alpha, a, b, c, d, d1, d2, mu_max);
    let window = turing_roots(a, b, c, d, d1, d2)
        .map(|(lo, hi)| (lo.max(T::zero()), hi.min(mu_max)))
        .filter(|(lo, hi)| lo <= hi);
    let mut witnesses = Vec::new();
    if let Some((lo, hi)) = window {
        let unstable = |mu: T| {
            mode_eigenvalues(a, b, c, d, d1, d2, mu)
                .into_iter()
                .max_by(|x, y| x.re.partial_cmp(&y.re).unwrap_or(std::cmp::Ordering::Equal))
                .expect("two eigenvalues")
        };
        match mus {
            Some(list) => {
                for (k, &mu) in list.iter().enumerate() {
                    if mu > lo && mu < hi && mode_determinant(a, b, c, d, d1, d2, mu) < T::zero() {
                        witnesses.push(Witness { k: Some(k), mu, lambda: unstable(mu) });
                    }
                }
            }
            None => {
                let vertex = ((d1 * d + d2 * a) / (T::lit(2.0) * d1 * d2)).max(lo).min(hi);
                witnesses.push(Witness { k: None, mu: vertex, lambda: unstable(vertex) });
            }
        }
    }
    Ok(TuringReport { homogeneous, window, witnesses, deferred_case: deferred })
}

/// Boundary in D₁ of the existence of an instability window, by bisection
/// to relative width 1e-12.
pub fn critical_d1<T: Real>(alpha: T, a: T, b: T, c: T, d: T, d2: T, bracket: (T, T)) -> Result<T> {
    let (lo, hi) = bracket;
    let no_bracket = || Error::NoBracket { lo: lo.as_f64(), hi: hi.as_f64() };
    if !(lo > T::zero() && hi > lo && d2 > T::zero()) {
        return Err(Error::InvalidParameter("need 0 < lo < hi and D2 > 0".into()));
    }
    if a <= T::zero() || trace_det_classify(alpha, a, b, c, d).status != Status::Stable {
        return Err(no_bracket());
    }
    let window = |d1: T| turing_roots(a, b, c, d, d1, d2).is_some();
    let (mut x0, mut x1) = (lo, hi);
    let p0 = window(x0);
    if p0 == window(x1) {
        return Err(no_bracket());
    }
    while x1 - x0 > T::lit(1e-12) * x1 {
        let mid = (x0 + x1) * T::lit(0.5);
        if mid <= x0 || mid >= x1 {
            break;
        }
        if window(mid) == p0 {
            x0 = mid;
        } else {
            x1 = mid;
        }
    }
    Ok((x0 + x1) * T::lit(0.5))
}
