//! Real gamma function family.
//!
//! `rgamma` is the primitive: 1/Γ is entire, so non-positive integers map to
//! an exact zero instead of an infinity. Both the asymptotic Mittag-Leffler
//! corrections 1/Γ(β − αk) and the Wright coefficients rely on this.

use crate::scalar::Real;

// Lanczos approximation, g = 607/128, 15 terms (Godfrey).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_P: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    4.652_362_892_704_858e-5,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

// Above this argument Γ is evaluated through its logarithm.
const DIRECT_LIMIT: f64 = 140.0;

/// sin(πx) with exact zeros at integers and no loss from large multiples of π.
pub fn sin_pi<T: Real>(x: T) -> T {
    if x.is_nan() || x.is_infinite() {
        return T::nan();
    }
    let two = T::lit(2.0);
    let n = (x * two).round();
    let f = x - n / two; // |f| <= 1/4
    let q = (n.as_f64().rem_euclid(4.0)) as i32;
    let pf = T::PI() * f;
    match q {
        0 => pf.sin(),
        1 => pf.cos(),
        2 => -pf.sin(),
        _ => -pf.cos(),
    }
}

#[inline]
fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.floor()
}

/// Lanczos sum and the shifted base t = x + g − 1/2, for Γ(x) with x ≥ 1/2.
fn lanczos_parts<T: Real>(x: T) -> (T, T) {
    let xm1 = x - T::one();
    let mut a = T::lit(LANCZOS_P[0]);
    for (k, &p) in LANCZOS_P.iter().enumerate().skip(1) {
        a += T::lit(p) / (xm1 + T::from_usize(k));
    }
    let t = xm1 + T::lit(LANCZOS_G) + T::lit(0.5);
    (a, t)
}

/// ln Γ(x) for x > 0 large enough that Stirling's series is exact to rounding.
fn ln_gamma_stirling<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    let inv = x.recip();
    let inv2 = inv * inv;
    // Bernoulli corrections B_{2k}/(2k(2k−1) x^{2k−1}).
    let series = inv
        * (T::lit(1.0 / 12.0)
            - inv2
                * (T::lit(1.0 / 360.0)
                    - inv2 * (T::lit(1.0 / 1260.0) - inv2 * (T::lit(1.0 / 1680.0) - inv2 * T::lit(1.0 / 1188.0)))));
    (x - half) * x.ln() - x + half * (T::TAU()).ln() + series
}

/// ln|Γ(x)| for x > 0.
fn ln_gamma_pos<T: Real>(x: T) -> T {
    if x >= T::lit(10.0) {
        return ln_gamma_stirling(x);
    }
    if x < T::lit(0.5) {
        // Γ(x) = Γ(x+1)/x keeps the Lanczos argument ≥ 1/2.
        return ln_gamma_pos(x + T::one()) - x.ln();
    }
    let (a, t) = lanczos_parts(x);
    T::lit(0.5) * T::TAU().ln() + (x - T::lit(0.5)) * t.ln() - t + a.ln()
}

/// Natural logarithm of |Γ(x)| and the sign of Γ(x).
///
/// At the poles the result is (+∞, 0).
pub fn ln_gamma_signed<T: Real>(x: T) -> (T, T) {
    if is_nonpositive_integer(x) {
        return (T::infinity(), T::zero());
    }
    if x > T::zero() {
        return (ln_gamma_pos(x), T::one());
    }
    // Reflection: Γ(x) Γ(1−x) = π / sin(πx).
    let s = sin_pi(x);
    let lg = T::PI().ln() - s.abs().ln() - ln_gamma_pos(T::one() - x);
    (lg, s.signum())
}

/// ln|Γ(x)|.
pub fn ln_gamma<T: Real>(x: T) -> T {
    ln_gamma_signed(x).0
}

/// Reciprocal gamma 1/Γ(x), exactly zero at x = 0, −1, −2, …
pub fn rgamma<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if is_nonpositive_integer(x) {
        return T::zero();
    }
    if x >= T::lit(0.5) {
        if x > T::lit(DIRECT_LIMIT) {
            return (-ln_gamma_pos(x)).exp();
        }
        let (a, t) = lanczos_parts(x);
        // t^(x−1/2) is split in two halves to stay finite up to x ≈ 171.
        let h = t.powf((x - T::lit(0.5)) * T::lit(0.5));
        let g = T::TAU().sqrt() * h * (h * (-t).exp()) * a;
        return g.recip();
    }
    // 1/Γ(x) = sin(πx) Γ(1−x) / π.
    let s = sin_pi(x);
    let y = T::one() - x;
    if y > T::lit(DIRECT_LIMIT) {
        return s * (ln_gamma_pos(y) - T::PI().ln()).exp();
    }
    s * gamma(y) / T::PI()
}

/// Γ(x); ±∞ at the poles.
pub fn gamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        return T::infinity();
    }
    if x >= T::lit(0.5) {
        if x > T::lit(DIRECT_LIMIT) {
            return ln_gamma_pos(x).exp();
        }
        let (a, t) = lanczos_parts(x);
        let h = t.powf((x - T::lit(0.5)) * T::lit(0.5));
        return T::TAU().sqrt() * h * (h * (-t).exp()) * a;
    }
    T::PI() / (sin_pi(x) * gamma(T::one() - x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn factorials() {
        let mut f = 1.0f64;
        for n in 1..30 {
            assert!(rel(gamma(n as f64), f) < 1e-14, "n = {n}");
            f *= n as f64;
        }
    }

    #[test]
    fn half_integer_values() {
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!(rel(gamma(0.5), sqrt_pi) < 1e-15);
        assert!(rel(gamma(1.5), 0.5 * sqrt_pi) < 1e-15);
        assert!(rel(gamma(-0.5), -2.0 * sqrt_pi) < 1e-15);
        assert!(rel(rgamma(0.5), 1.0 / sqrt_pi) < 1e-15);
    }

    #[test]
    fn poles_give_exact_zero() {
        for k in 0..20 {
            assert_eq!(rgamma(-(k as f64)), 0.0);
        }
        assert!(gamma(-3.0f64).is_infinite());
    }

    #[test]
    fn reflection_region_matches_recurrence() {
        // Γ(x) = Γ(x+1)/x
        for &x in &[-3.7f64, -2.2, -0.9, -0.3, 0.2] {
            assert!(rel(gamma(x), gamma(x + 1.0) / x) < 1e-13, "x = {x}");
        }
    }

    #[test]
    fn large_arguments() {
        // ln Γ(171) = ln(170!)
        let lg: f64 = (1..=170).map(|k| (k as f64).ln()).sum();
        assert!(rel(ln_gamma(171.0f64), lg) < 1e-14);
        assert!(rel(rgamma(160.0f64), (-ln_gamma(160.0f64)).exp()) < 1e-12);
        assert!(rgamma(400.0f64) == 0.0 || rgamma(400.0f64) < 1e-300);
        let (lg, s) = ln_gamma_signed(-170.5f64);
        assert_eq!(s, -1.0);
        assert!(lg < -700.0);
    }

    #[test]
    fn stirling_and_lanczos_agree_at_switch() {
        let a = ln_gamma_stirling(10.0f64);
        let (s, t) = lanczos_parts(10.0f64);
        let b = 0.5 * std::f64::consts::TAU.ln() + 9.5 * t.ln() - t + s.ln();
        assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn f32_instantiation() {
        assert!((gamma(5.0f32) - 24.0).abs() < 1e-4);
        assert_eq!(rgamma(-2.0f32), 0.0);
    }

    #[test]
    fn sin_pi_exact_at_integers() {
        for k in -10..10 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert!((sin_pi(0.5f64) - 1.0).abs() < 1e-16);
        assert!((sin_pi(1e6 + 0.25f64) - (0.25f64 * std::f64::consts::PI).sin()).abs() < 1e-12);
    }
}
