//! Fractional Adams predictor–corrector on the Volterra form
//! u(t) = u0 + (1/Γ(α)) ∫₀^t (t−s)^{α−1} g(u(s)) ds.
//!
//! The semilinear variant treats a diagonal linear part exactly: component i
//! obeys ∂^α u_i = λ_i u_i + g_i(u), and the memory kernel becomes
//! τ^{α−1}E_{α,α}(λ_i τ^α). With λ = 0 it is the classical scheme.

use std::collections::HashMap;

use serde_json::json;

use crate::error::{Error, Result};
use crate::fode::duhamel::KernelMoments;
use crate::fode::grid::TimeGrid;
use crate::fode::linear::DEFAULT_BLOW_UP_CEILING;
use crate::fode::trajectory::{euclid, BlowUp, Scheme, Trajectory};
use crate::io::json_real;
use crate::scalar::{creal, Real, C};

#[derive(Clone, Copy, Debug)]
pub struct PeceOptions<T> {
    /// Corrector sweeps per step, 1 to 5.
    pub corrector_iterations: usize,
    /// State norm above which the run stops and is marked as blown up.
    pub blow_up_ceiling: T,
    /// Keep every `output_stride`-th node (the last node is always kept).
    pub output_stride: usize,
}

impl<T: Real> Default for PeceOptions<T> {
    fn default() -> Self {
        Self { corrector_iterations: 1, blow_up_ceiling: T::lit(DEFAULT_BLOW_UP_CEILING), output_stride: 1 }
    }
}

/// ∂_t^α u = g(u) with the default options.
pub fn solve_nonlinear<T: Real, G: FnMut(&[T], &mut [T])>(
    alpha: T,
    g: G,
    u0: &[T],
    grid: &TimeGrid<T>,
) -> Result<Trajectory<T>> {
    solve_nonlinear_with(alpha, g, u0, grid, PeceOptions::default())
}

pub fn solve_nonlinear_with<T: Real, G: FnMut(&[T], &mut [T])>(
    alpha: T,
    g: G,
    u0: &[T],
    grid: &TimeGrid<T>,
    opts: PeceOptions<T>,
) -> Result<Trajectory<T>> {
    solve_semilinear(alpha, &vec![T::zero(); u0.len()], g, u0, grid, opts)
}

/// Weight tables for one value of λ.
struct Weights<T> {
    /// Uniform grids: rectangle weights and hat-interval (left, right) weights
    /// indexed by lag m ≥ 1, and E_α(λ t_n^α) per node.
    rect: Vec<T>,
    left: Vec<T>,
    right: Vec<T>,
    relax: Vec<T>,
}

impl<T: Real> Weights<T> {
    fn uniform(kernel: KernelMoments<T>, nodes: &[T], h: T) -> Result<Self> {
        let n = nodes.len();
        let moments: Vec<(C<T>, C<T>)> = if kernel.is_pure_power() {
            vec![(creal(T::zero()), creal(T::zero())); n]
        } else {
            (0..n).map(|m| kernel.at(T::from_usize(m) * h)).collect::<Result<_>>()?
        };
        let mut rect = vec![T::zero(); n];
        let mut left = vec![T::zero(); n];
        let mut right = vec![T::zero(); n];
        for m in 1..n {
            let a = T::from_usize(m - 1) * h;
            rect[m] = kernel.rectangle(a, h, moments[m - 1], moments[m]).re;
            let (l, r) = kernel.interval(a, h, moments[m - 1], moments[m]);
            left[m] = l.re;
            right[m] = r.re;
        }
        let relax = nodes.iter().map(|&t| kernel.relaxation(t).map(|z| z.re)).collect::<Result<_>>()?;
        let w = Self { rect, left, right, relax };
        if w.rect.iter().chain(&w.left).chain(&w.right).chain(&w.relax).any(|x| !x.is_finite()) {
            return Err(Error::QuadratureFailure("non-finite predictor-corrector weight".into()));
        }
        Ok(w)
    }
}

/// Semilinear predictor–corrector: ∂^α u_i = lin_i·u_i + g_i(u).
///
/// On uniform grids the kernel weights depend on the lag only and are
/// tabulated once per distinct λ. Graded grids recompute them per step, which
/// costs one Mittag-Leffler evaluation per node pair when λ ≠ 0.
pub fn solve_semilinear<T: Real, G: FnMut(&[T], &mut [T])>(
    alpha: T,
    lin: &[T],
    mut g: G,
    u0: &[T],
    grid: &TimeGrid<T>,
    opts: PeceOptions<T>,
) -> Result<Trajectory<T>> {
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1]")));
    }
    if !(1..=5).contains(&opts.corrector_iterations) {
        return Err(Error::InvalidParameter("corrector_iterations must be between 1 and 5".into()));
    }
    let dim = u0.len();
    if lin.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: lin.len() });
    }
    let stride = opts.output_stride.max(1);
    let nodes = grid.nodes();
    let steps = grid.steps();

    // Group components by λ so equal rates share one weight table.
    let mut groups: HashMap<u64, usize> = HashMap::new();
    let mut lambdas: Vec<T> = Vec::new();
    let group_of: Vec<usize> = lin
        .iter()
        .map(|&l| {
            *groups.entry(l.as_f64().to_bits()).or_insert_with(|| {
                lambdas.push(l);
                lambdas.len() - 1
            })
        })
        .collect();
    let kernels: Vec<KernelMoments<T>> =
        lambdas.iter().map(|&l| KernelMoments::new(alpha, creal(l))).collect::<Result<_>>()?;
    let tables: Option<Vec<Weights<T>>> = if grid.is_uniform() {
        Some(kernels.iter().map(|k| Weights::uniform(*k, &nodes, grid.step())).collect::<Result<_>>()?)
    } else {
        None
    };

    let mut traj = Trajectory::new(*grid, alpha, Scheme::Pece);
    traj.settings.insert("corrector_iterations".into(), json!(opts.corrector_iterations));
    traj.settings.insert("blow_up_ceiling".into(), json_real(opts.blow_up_ceiling));
    traj.settings.insert("output_stride".into(), json!(stride));
    traj.push(nodes[0], u0.to_vec());

    let mut history: Vec<Vec<T>> = Vec::with_capacity(steps + 1);
    let mut gbuf = vec![T::zero(); dim];
    g(u0, &mut gbuf);
    history.push(gbuf.clone());

    let mut pred = vec![T::zero(); dim];
    let mut memory = vec![T::zero(); dim];
    let mut implicit = vec![T::zero(); dim];
    let mut relax = vec![T::zero(); dim];
    for n1 in 1..=steps {
        let t = nodes[n1];
        // Per-step tables on graded grids: rect[j], hat[j] for j ≤ n1.
        let local: Option<Vec<(Vec<T>, Vec<T>, T)>> = match &tables {
            Some(_) => None,
            None => Some(kernels.iter().map(|k| graded_weights(k, &nodes, n1)).collect::<Result<_>>()?),
        };
        for i in 0..dim {
            let gi = group_of[i];
            let (mut p, mut c) = (T::zero(), T::zero());
            match (&tables, &local) {
                (Some(tab), _) => {
                    let w = &tab[gi];
                    for (j, hj) in history.iter().enumerate() {
                        let m = n1 - j;
                        p += w.rect[m] * hj[i];
                        let mut hat = w.left[m];
                        if j > 0 {
                            hat += w.right[m + 1];
                        }
                        c += hat * hj[i];
                    }
                    implicit[i] = w.right[1];
                    relax[i] = w.relax[n1];
                }
                (None, Some(loc)) => {
                    let (rect, hat, r) = &loc[gi];
                    for (j, hj) in history.iter().enumerate() {
                        p += rect[j] * hj[i];
                        c += hat[j] * hj[i];
                    }
                    implicit[i] = hat[n1];
                    relax[i] = *r;
                }
                _ => unreachable!(),
            }
            pred[i] = relax[i] * u0[i] + p;
            memory[i] = relax[i] * u0[i] + c;
        }
        let mut state = pred.clone();
        for _ in 0..opts.corrector_iterations {
            g(&state, &mut gbuf);
            for i in 0..dim {
                state[i] = memory[i] + implicit[i] * gbuf[i];
            }
        }
        let norm = euclid(&state);
        if !norm.is_finite() || norm > opts.blow_up_ceiling {
            traj.blow_up = Some(BlowUp { index: traj.len(), time: t, norm });
            return Ok(traj);
        }
        g(&state, &mut gbuf);
        history.push(gbuf.clone());
        if n1 % stride == 0 || n1 == steps {
            traj.push(t, state);
        }
    }
    Ok(traj)
}

/// Rectangle weights, hat weights (including the new node n1) and the
/// relaxation factor for step n1 on an arbitrary grid.
fn graded_weights<T: Real>(kernel: &KernelMoments<T>, nodes: &[T], n1: usize) -> Result<(Vec<T>, Vec<T>, T)> {
    let t = nodes[n1];
    let moments: Vec<(C<T>, C<T>)> = if kernel.is_pure_power() {
        vec![(creal(T::zero()), creal(T::zero())); n1 + 1]
    } else {
        (0..=n1).map(|j| kernel.at(t - nodes[j])).collect::<Result<_>>()?
    };
    let mut rect = vec![T::zero(); n1];
    let mut hat = vec![T::zero(); n1 + 1];
    for j in 0..n1 {
        let a = t - nodes[j + 1];
        let h = nodes[j + 1] - nodes[j];
        rect[j] = kernel.rectangle(a, h, moments[j + 1], moments[j]).re;
        let (l, r) = kernel.interval(a, h, moments[j + 1], moments[j]);
        hat[j] += l.re;
        hat[j + 1] += r.re;
    }
    if rect.iter().chain(&hat).any(|x| !x.is_finite()) {
        return Err(Error::QuadratureFailure("non-finite predictor-corrector weight".into()));
    }
    Ok((rect, hat, kernel.relaxation(t)?.re))
}
