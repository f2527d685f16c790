use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::fode::grid::TimeGrid;
use crate::fode::resolvent::ResolventFamily;
use crate::fode::trajectory::{euclid, BlowUp, Scheme, Trajectory};
use crate::io::json_real;
use crate::linalg::DenseMatrix;
use crate::scalar::Real;

/// Default state-norm ceiling for blow-up detection.
pub const DEFAULT_BLOW_UP_CEILING: f64 = 1e12;

type Forcing<'a, T> = Box<dyn Fn(T) -> Vec<T> + Send + Sync + 'a>;

/// ∂_t^α u = A u + f(t).
pub struct LinearFDE<'a, T> {
    a: DenseMatrix<T>,
    alpha: T,
    forcing: Option<Forcing<'a, T>>,
    blow_up_ceiling: T,
}

impl<T: Real> fmt::Debug for LinearFDE<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LinearFDE")
            .field("a", &self.a)
            .field("alpha", &self.alpha)
            .field("forced", &self.forcing.is_some())
            .finish()
    }
}

impl<'a, T: Real> LinearFDE<'a, T> {
    pub fn new(a: DenseMatrix<T>, alpha: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha <= T::one()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1]")));
        }
        Ok(Self { a, alpha, forcing: None, blow_up_ceiling: T::lit(DEFAULT_BLOW_UP_CEILING) })
    }

    pub fn with_forcing(mut self, f: impl Fn(T) -> Vec<T> + Send + Sync + 'a) -> Self {
        self.forcing = Some(Box::new(f));
        self
    }

    pub fn with_blow_up_ceiling(mut self, ceiling: T) -> Self {
        self.blow_up_ceiling = ceiling;
        self
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.a
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

/// u(t) = S_α(t)u0 + ∫₀^t (t−s)^{α−1}P_α(t−s) f(s) ds on every grid node.
///
/// The convolution uses piecewise-linear f with exact kernel moments; on
/// uniform grids the moments are computed once per lag. Overflow of the
/// resolvents, or a state norm above the ceiling, truncates the trajectory.
pub fn solve_linear<T: Real>(sys: &LinearFDE<'_, T>, u0: &[T], grid: &TimeGrid<T>) -> Result<Trajectory<T>> {
    let n = sys.dim();
    if u0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: u0.len() });
    }
    let family = ResolventFamily::new(&sys.a, sys.alpha)?;
    let nodes = grid.nodes();
    let forcing: Option<Vec<Vec<T>>> = match &sys.forcing {
        Some(f) => {
            let v: Vec<Vec<T>> = nodes.iter().map(|&t| f(t)).collect();
            if let Some(bad) = v.iter().find(|x| x.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, found: bad.len() });
            }
            Some(v)
        }
        None => None,
    };
    let mut traj = Trajectory::new(*grid, sys.alpha, Scheme::Duhamel);
    traj.settings.insert("spectral".into(), json!(family.is_spectral()));
    traj.settings.insert("blow_up_ceiling".into(), json_real(sys.blow_up_ceiling));
    let mut lag_table: Vec<(DenseMatrix<T>, DenseMatrix<T>)> = Vec::new();
    for (k, &t) in nodes.iter().enumerate() {
        let step = (|| -> Result<Vec<T>> {
            let mut u = family.s(t)?.matvec(u0);
            if let Some(fv) = &forcing {
                if grid.is_uniform() {
                    while lag_table.len() <= k {
                        let m = lag_table.len();
                        lag_table.push(family.kernel_moments(T::from_usize(m) * grid.step())?);
                    }
                }
                let moments: Vec<(DenseMatrix<T>, DenseMatrix<T>)> = if grid.is_uniform() {
                    (0..=k).map(|j| lag_table[k - j].clone()).collect()
                } else {
                    (0..=k).map(|j| family.kernel_moments(t - nodes[j])).collect::<Result<_>>()?
                };
                for j in 0..k {
                    let a = t - nodes[j + 1];
                    let h = nodes[j + 1] - nodes[j];
                    let b = a + h;
                    let d1 = moments[j].0.add_scaled(-T::one(), &moments[j + 1].0);
                    let d2 = moments[j].1.add_scaled(-T::one(), &moments[j + 1].1);
                    let left = d2.add_scaled(-a, &d1).scale(h.recip());
                    let right = d1.scale(b).add_scaled(-T::one(), &d2).scale(h.recip());
                    for (ui, (l, r)) in u.iter_mut().zip(left.matvec(&fv[j]).into_iter().zip(right.matvec(&fv[j + 1])))
                    {
                        *ui += l + r;
                    }
                }
            }
            Ok(u)
        })();
        match step {
            Ok(u) => {
                let norm = euclid(&u);
                if !norm.is_finite() || norm > sys.blow_up_ceiling {
                    traj.blow_up = Some(BlowUp { index: k, time: t, norm });
                    break;
                }
                traj.push(t, u);
            }
            Err(Error::Overflow(_)) => {
                traj.blow_up = Some(BlowUp { index: k, time: t, norm: T::infinity() });
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(traj)
}
