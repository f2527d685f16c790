//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rows(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..n).map(|_| rng.gen_range(lo..hi)).collect()).collect()
}

/// Determinant by Gaussian elimination with complete pivoting.
pub fn det_full_pivot(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let (mut pi, mut pj, mut best) = (k, k, 0.0);
        for i in k..n {
            for j in k..n {
                if a[i][j].abs() > best {
                    best = a[i][j].abs();
                    pi = i;
                    pj = j;
                }
            }
        }
        if best == 0.0 {
            return 0.0;
        }
        if pi != k {
            a.swap(pi, k);
            det = -det;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            det = -det;
        }
        det *= a[k][k];
        for i in k + 1..n {
            let l = a[i][k] / a[k][k];
            for j in k..n {
                a[i][j] -= l * a[k][j];
            }
        }
    }
    det
}

pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// Truncated Taylor series Σ_{k≤terms} (tA)^k / k!.
pub fn taylor_exp(a: &[Vec<f64>], t: f64, terms: usize) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut term: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let mut sum = term.clone();
    let ta: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|x| x * t).collect()).collect();
    for k in 1..=terms {
        term = matmul(&term, &ta).into_iter().map(|r| r.into_iter().map(|x| x / k as f64).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                sum[i][j] += term[i][j];
            }
        }
    }
    sum
}

pub fn max_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// erfc by composite Gauss–Legendre quadrature of (2/√π)∫_x^∞ e^{−t²} dt,
/// truncated where the integrand underflows.
pub fn erfc_quadrature(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc_quadrature(-x);
    }
    let upper = x + 9.0;
    let panels = 400;
    let h = (upper - x) / panels as f64;
    // 5-point Gauss–Legendre.
    let nodes = [0.0, -0.538_469_310_105_683_1, 0.538_469_310_105_683_1, -0.906_179_845_938_664, 0.906_179_845_938_664];
    let weights = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let mut s = 0.0;
    for p in 0..panels {
        let mid = x + (p as f64 + 0.5) * h;
        for (xi, wi) in nodes.iter().zip(&weights) {
            let t = mid + 0.5 * h * xi;
            s += wi * (-t * t).exp();
        }
    }
    s * 0.5 * h * 2.0 / std::f64::consts::PI.sqrt()
}

/// E_{1/2}(x) = e^{x²} erfc(−x).
pub fn ml_half(x: f64) -> f64 {
    (x * x).exp() * erfc_quadrature(-x)
}

/// Mittag-Leffler power series with compensated summation and an
/// independent gamma; trustworthy where the terms do not cancel (x ≥ 0, or
/// |x|^{1/α} of a few units).
pub fn ml_series_ref(alpha: f64, beta: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for k in 0..2000 {
        let g = gamma_ref(alpha * k as f64 + beta);
        let term = x.powi(k) / g;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if k > 10 && term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// Γ(x) for x > 0 by the Stirling series after upward recurrence to x ≥ 20.
pub fn gamma_ref(x: f64) -> f64 {
    assert!(x > 0.0);
    if x > 171.0 {
        return f64::INFINITY;
    }
    let mut shift = 1.0;
    let mut y = x;
    while y < 20.0 {
        shift *= y;
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series =
        inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))));
    let lg = (y - 0.5) * y.ln() - y + 0.5 * (2.0 * std::f64::consts::PI).ln() + series;
    lg.exp() / shift
}

const GL5_NODES: [f64; 5] =
    [0.0, -0.538_469_310_105_683_1, 0.538_469_310_105_683_1, -0.906_179_845_938_664, 0.906_179_845_938_664];
const GL5_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

/// Composite 5-point Gauss–Legendre rule on `panels` equal panels.
pub fn gl_integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut s = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        for (x, w) in GL5_NODES.iter().zip(&GL5_WEIGHTS) {
            s += w * f(mid + 0.5 * h * x);
        }
    }
    0.5 * h * s
}

/// Composite Gauss–Legendre on geometrically refined panels toward `a`.
pub fn gl_integrate_graded(f: impl Fn(f64) -> f64, a: f64, b: f64, levels: usize, panels: usize) -> f64 {
    let mut s = 0.0;
    let mut hi = b;
    for _ in 0..levels {
        let lo = a + (hi - a) * 0.5;
        s += gl_integrate(&f, lo, hi, panels);
        hi = lo;
    }
    s + gl_integrate(&f, a, hi, panels)
}

/// E_α(−t^α) for 0 < α < 1 from its completely monotone representation
/// (sin απ/π) ∫₀^∞ e^{−rt} r^{α−1} / (r^{2α} + 2r^α cos απ + 1) dr,
/// written in the variable s = (rt)^α.
pub fn ml_decay_ref(alpha: f64, t: f64) -> f64 {
    let ta = t.powf(alpha);
    let c = (alpha * std::f64::consts::PI).cos();
    let upper = 750f64.powf(alpha);
    let f = |s: f64| {
        let v = s / ta;
        (-s.powf(1.0 / alpha)).exp() / (v * v + 2.0 * v * c + 1.0)
    };
    let integral = gl_integrate_graded(f, 0.0, upper, 60, 40);
    (alpha * std::f64::consts::PI).sin() / (alpha * std::f64::consts::PI) * integral / ta
}

/// Non-constant Neumann steady state of v'' + v − v³ = 0 on [0, L] that
/// decreases monotonically from v(0) = a to v(L) = −a.
pub struct ChafeeProfile {
    pub amplitude: f64,
    h: f64,
    v: Vec<f64>,
    dv: Vec<f64>,
}

/// Time for v to travel from a to −a: ∫_{−π/2}^{π/2} dθ / √(1 − a²(1 + sin²θ)/2).
pub fn chafee_half_period(a: f64) -> f64 {
    let f = |th: f64| {
        let s = th.sin();
        1.0 / (1.0 - a * a * (1.0 + s * s) / 2.0).sqrt()
    };
    gl_integrate(f, -std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2, 200)
}

impl ChafeeProfile {
    /// Shooting: bisection on the amplitude until the half period equals L,
    /// then an RK4 table for the profile.
    pub fn new(length: f64, steps: usize) -> Self {
        assert!(length > std::f64::consts::PI, "no non-constant profile for L ≤ π");
        let (mut lo, mut hi) = (0.0, 1.0 - 1e-12);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if chafee_half_period(mid) < length {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let amplitude = 0.5 * (lo + hi);
        let h = length / steps as f64;
        let rhs = |v: f64, w: f64| (w, v * v * v - v);
        let (mut v, mut w) = (amplitude, 0.0);
        let mut vs = vec![v];
        let mut ws = vec![w];
        for _ in 0..steps {
            let k1 = rhs(v, w);
            let k2 = rhs(v + 0.5 * h * k1.0, w + 0.5 * h * k1.1);
            let k3 = rhs(v + 0.5 * h * k2.0, w + 0.5 * h * k2.1);
            let k4 = rhs(v + h * k3.0, w + h * k3.1);
            v += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            w += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
            vs.push(v);
            ws.push(w);
        }
        Self { amplitude, h, v: vs, dv: ws }
    }

    /// Cubic Hermite interpolation of the table.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.v.len() - 1;
        let j = ((x / self.h).floor() as usize).min(n - 1);
        let s = (x - j as f64 * self.h) / self.h;
        let (h00, h10, h01, h11) = (
            2.0 * s.powi(3) - 3.0 * s * s + 1.0,
            s.powi(3) - 2.0 * s * s + s,
            -2.0 * s.powi(3) + 3.0 * s * s,
            s.powi(3) - s * s,
        );
        h00 * self.v[j] + h10 * self.h * self.dv[j] + h01 * self.v[j + 1] + h11 * self.h * self.dv[j + 1]
    }

    pub fn end_slope(&self) -> f64 {
        *self.dv.last().unwrap()
    }

    pub fn end_value(&self) -> f64 {
        *self.v.last().unwrap()
    }
}

/// Log-spaced points in [lo, hi].
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect()
}

/// Least-squares slope of log|y| against log x.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
