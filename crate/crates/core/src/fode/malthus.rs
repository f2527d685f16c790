use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOptions};
use crate::scalar::Real;

/// Generation-by-generation growth model
/// u_n = u0 + Σ_{k<n} (S(n−k) − S(n−k−1)) u_k, returned for n = 0..=steps.
///
/// `s` is the cumulative rate function on the integers and must satisfy S(0) = 0.
pub fn discrete_malthus<T: Real, S: FnMut(usize) -> T>(mut s: S, u0: T, steps: usize) -> Result<Vec<T>> {
    if steps == 0 {
        return Err(Error::InvalidParameter("steps must be positive".into()));
    }
    let cumulative: Vec<T> = (0..=steps).map(&mut s).collect();
    if cumulative[0] != T::zero() {
        return Err(Error::InvalidParameter(format!("S(0) must vanish, got {}", cumulative[0])));
    }
    let increments: Vec<T> = cumulative.windows(2).map(|w| w[1] - w[0]).collect();
    let mut u = Vec::with_capacity(steps + 1);
    u.push(u0);
    for n in 1..=steps {
        // Σ_k ΔS_{n−k−1} u_k, with ΔS_m = S(m+1) − S(m).
        let memory: T = u.iter().zip(increments[..n].iter().rev()).map(|(&uk, &d)| d * uk).sum();
        u.push(u0 + memory);
    }
    Ok(u)
}

/// Ratio ∫₀^t min{(t−s)^{−α−1}, (t−s)^{α−1}}·min{s^{−α}, 1}^{1+η} ds / min{t^{−α}, 1},
/// which stays bounded in t for every α ∈ (0, 1), η ≥ 0.
pub fn kernel_bound_ratio<T: Real>(alpha: T, eta: T, t: T) -> Result<T> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    if !(eta >= T::zero() && t > T::zero() && t.is_finite()) {
        return Err(Error::InvalidParameter("need eta >= 0 and t > 0".into()));
    }
    let one = T::one();
    let weight = |s: T| if s <= one { one } else { s.powf(-alpha * (one + eta)) };
    let opts = QuadOptions { abs_tol: T::zero(), rel_tol: T::lit(1e-10), max_panels: 2000 };
    let mut total = T::zero();
    // Near-diagonal part τ = t − s ∈ (0, min(1, t)]: with τ = v^{1/α},
    // τ^{α−1} dτ = dv/α removes the endpoint singularity.
    let near = one.min(t);
    let near_part = |lo: T, hi: T| -> Result<T> {
        let (v, _) = integrate(|v: T| weight(t - v.powf(alpha.recip())) / alpha, lo.powf(alpha), hi.powf(alpha), opts)?;
        Ok(v)
    };
    // Split where s crosses 1 so the integrand is smooth on each piece.
    if t > one && t - near < one {
        let tau_kink = t - one;
        total += near_part(T::zero(), tau_kink)? + near_part(tau_kink, near)?;
    } else {
        total += near_part(T::zero(), near)?;
    }
    if t > one {
        let far = |s: T| (t - s).powf(-alpha - one) * weight(s);
        let end = t - one;
        if end <= one {
            total += integrate(far, T::zero(), end, opts)?.0;
        } else {
            total += integrate(far, T::zero(), one, opts)?.0 + integrate(far, one, end, opts)?.0;
        }
    }
    Ok(total / t.powf(-alpha).min(one))
}
