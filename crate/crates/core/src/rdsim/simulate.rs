use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fode::{
    euclid, solve_semilinear, BlowUp, PeceOptions, ResolventFamily, Scheme, TimeGrid, Trajectory,
    DEFAULT_BLOW_UP_CEILING,
};
use crate::io::{self, json_real};
use crate::rdsim::domain::{eigenbasis, DomainSpec, EigenBasis};
use crate::rdsim::transform::{dealiased_points, Collocation, Field};
use crate::scalar::Real;
use crate::stability::{mode_matrix, RDSpec};

#[derive(Clone, Copy, Debug)]
pub struct RdOptions<T> {
    /// Collocation points per axis for the nonlinear term; `None` picks the
    /// dealiased size.
    pub points_per_axis: Option<usize>,
    pub corrector_iterations: usize,
    pub blow_up_ceiling: T,
    /// Keep every `output_stride`-th time node (the last node is always kept).
    pub output_stride: usize,
}

impl<T: Real> Default for RdOptions<T> {
    fn default() -> Self {
        Self {
            points_per_axis: None,
            corrector_iterations: 1,
            blow_up_ceiling: T::lit(DEFAULT_BLOW_UP_CEILING),
            output_stride: 1,
        }
    }
}

/// Galerkin coefficients over time. States are laid out like
/// [`Field::coefficients`], so `trajectory.norms()` are L² norms.
#[derive(Clone, Debug)]
pub struct FieldTrajectory<T> {
    pub basis: EigenBasis<T>,
    pub components: usize,
    pub trajectory: Trajectory<T>,
}

impl<T: Real> FieldTrajectory<T> {
    pub fn len(&self) -> usize {
        self.trajectory.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trajectory.is_empty()
    }

    pub fn times(&self) -> &[T] {
        &self.trajectory.times
    }

    pub fn field(&self, idx: usize) -> Field<T> {
        Field::from_coefficients(self.components, self.basis.len(), self.trajectory.states[idx].clone())
            .expect("stored states match the basis")
    }

    /// (β_{1,b}(t), …, β_{n,b}(t)) at every stored time.
    pub fn mode_series(&self, b: usize) -> Vec<Vec<T>> {
        let nb = self.basis.len();
        self.trajectory.states.iter().map(|s| (0..self.components).map(|i| s[i * nb + b]).collect()).collect()
    }

    /// Euclidean norm of the mode-b coefficient vector over time.
    pub fn mode_norms(&self, b: usize) -> Vec<T> {
        self.mode_series(b).iter().map(|v| euclid(v)).collect()
    }

    /// E_b(t) = Σ_i β_{i,b}(t)² for every stored time.
    pub fn mode_energies(&self) -> Vec<Vec<T>> {
        (0..self.len())
            .map(|m| {
                let f = self.field(m);
                (0..self.basis.len()).map(|b| f.mode_energy(b)).collect()
            })
            .collect()
    }

    /// Spatial mean of each component at stored time `idx`.
    pub fn means(&self, idx: usize) -> Vec<T> {
        let nb = self.basis.len();
        let vol = self.basis.domain.measure();
        let s = &self.trajectory.states[idx];
        (0..self.components).map(|i| (0..nb).map(|b| s[i * nb + b] * self.basis.integral(b)).sum::<T>() / vol).collect()
    }

    /// max over collocation points and components of |u|, at every stored time.
    pub fn sup_norms(&self, grid: &Collocation<T>) -> Vec<T> {
        (0..self.len())
            .into_par_iter()
            .map(|m| self.field(m).values(grid).iter().flatten().fold(T::zero(), |acc, v| acc.max(v.abs())))
            .collect()
    }

    /// Coefficient table and sidecar.
    pub fn write(&self, path: &Path) -> Result<()> {
        self.trajectory.write(path)
    }

    /// Field values on the collocation grid at stored time `idx`:
    /// columns x[,y],u_1..u_n, plus a JSON sidecar.
    pub fn write_snapshot(&self, path: &Path, grid: &Collocation<T>, idx: usize) -> Result<()> {
        if idx >= self.len() {
            return Err(Error::InvalidParameter(format!("snapshot {idx} outside {} stored times", self.len())));
        }
        let values = self.field(idx).values(grid);
        let coords = ["x", "y"];
        let dim = self.basis.domain.spatial_dim();
        let header: Vec<String> = coords[..dim]
            .iter()
            .map(|s| s.to_string())
            .chain((1..=self.components).map(|i| format!("u_{i}")))
            .collect();
        let rows: Vec<Vec<T>> =
            (0..grid.len()).map(|j| grid.point(j).into_iter().chain(values.iter().map(|v| v[j])).collect()).collect();
        io::write_csv(path, &header, &rows)?;
        io::write_json(
            &io::sidecar_path(path),
            &json!({
                "time": json_real(self.trajectory.times[idx]),
                "index": idx,
                "domain": self.basis.domain.to_json(),
                "points_per_axis": grid.points_per_axis(),
                "trajectory": self.trajectory.sidecar(),
            }),
        )
    }

    /// Columns t,E_0..E_{B−1}, plus a JSON sidecar.
    pub fn write_mode_energy(&self, path: &Path) -> Result<()> {
        let header: Vec<String> =
            std::iter::once("t".to_string()).chain((0..self.basis.len()).map(|b| format!("E_{b}"))).collect();
        let rows: Vec<Vec<T>> = self
            .trajectory
            .times
            .iter()
            .zip(self.mode_energies())
            .map(|(&t, e)| std::iter::once(t).chain(e).collect())
            .collect();
        io::write_csv(path, &header, &rows)?;
        let mus: Vec<Value> = self.basis.mus().into_iter().map(json_real).collect();
        io::write_json(
            &io::sidecar_path(path),
            &json!({"mu": mus, "domain": self.basis.domain.to_json(), "trajectory": self.trajectory.sidecar()}),
        )
    }
}

fn stored_nodes(steps: usize, stride: usize) -> Vec<usize> {
    let stride = stride.max(1);
    (0..=steps).filter(|&n| n % stride == 0 || n == steps).collect()
}

fn check_field<T: Real>(u0: &Field<T>, components: usize, basis: &EigenBasis<T>) -> Result<()> {
    if u0.components() != components {
        return Err(Error::DimensionMismatch { expected: components, found: u0.components() });
    }
    if u0.modes() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), found: u0.modes() });
    }
    Ok(())
}

/// ∂_t^α u = DΔu + Au by exact per-mode evolution β_b(t) = S_α^{(b)}(t)β_b(0),
/// with S^{(b)} the resolvent of the mode matrix A − μ_b D. Modes are
/// evaluated in parallel and never exchange energy.
pub fn simulate_linear_rd<T: Real>(
    spec: &RDSpec<T>,
    domain: &DomainSpec<T>,
    u0: &Field<T>,
    grid: &TimeGrid<T>,
    opts: RdOptions<T>,
) -> Result<FieldTrajectory<T>> {
    let basis = eigenbasis(domain);
    let n = spec.dim();
    check_field(u0, n, &basis)?;
    let nb = basis.len();
    let nodes = grid.nodes();
    let stored = stored_nodes(grid.steps(), opts.output_stride);
    let ceiling = opts.blow_up_ceiling;

    // Per mode: coefficient vectors at stored nodes, cut at the first overflow.
    let per_mode: Vec<Vec<Vec<T>>> = basis
        .functions
        .par_iter()
        .enumerate()
        .map(|(b, f)| {
            let beta0 = u0.mode(b);
            if beta0.iter().all(|&x| x == T::zero()) {
                return Ok(vec![beta0; stored.len()]);
            }
            let family = ResolventFamily::new(&mode_matrix(spec, f.mu)?, spec.alpha())?;
            let mut out = Vec::with_capacity(stored.len());
            for &m in &stored {
                match family.s(nodes[m]) {
                    Ok(s) => {
                        let v = s.matvec(&beta0);
                        let norm = euclid(&v);
                        if !norm.is_finite() || norm > ceiling {
                            break;
                        }
                        out.push(v);
                    }
                    Err(Error::Overflow(_)) => break,
                    Err(e) => return Err(e),
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut traj = Trajectory::new(*grid, spec.alpha(), Scheme::ModeResolvent);
    traj.settings.insert("domain".into(), domain.to_json());
    traj.settings.insert("components".into(), json!(n));
    traj.settings.insert("diffusion".into(), Value::Array(spec.diffusion().iter().map(|&d| json_real(d)).collect()));
    traj.settings.insert("blow_up_ceiling".into(), json_real(ceiling));
    traj.settings.insert("output_stride".into(), json!(opts.output_stride.max(1)));
    for (slot, &m) in stored.iter().enumerate() {
        let t = nodes[m];
        if per_mode.iter().any(|v| v.len() <= slot) {
            traj.blow_up = Some(BlowUp { index: slot, time: t, norm: T::infinity() });
            break;
        }
        let mut state = vec![T::zero(); n * nb];
        for (b, series) in per_mode.iter().enumerate() {
            for i in 0..n {
                state[i * nb + b] = series[slot][i];
            }
        }
        let norm = euclid(&state);
        if norm > ceiling {
            traj.blow_up = Some(BlowUp { index: slot, time: t, norm });
            break;
        }
        traj.push(t, state);
    }
    Ok(FieldTrajectory { basis, components: n, trajectory: traj })
}

/// ∂_t^α u = DΔu + g(u) by Galerkin truncation and predictor–corrector
/// stepping in coefficient space. The diffusion acts exactly through the
/// Mittag-Leffler kernels; g is evaluated pointwise on the collocation grid
/// and projected back.
pub fn simulate_nonlinear_rd<T: Real, G: Fn(&[T], &mut [T]) + Sync>(
    alpha: T,
    g: G,
    diffusion: &[T],
    domain: &DomainSpec<T>,
    u0: &Field<T>,
    grid: &TimeGrid<T>,
    opts: RdOptions<T>,
) -> Result<FieldTrajectory<T>> {
    let n = diffusion.len();
    if diffusion.iter().any(|&d| !(d >= T::zero() && d.is_finite())) {
        return Err(Error::InvalidParameter("diffusion coefficients must be nonnegative".into()));
    }
    let colloc = Collocation::new(domain, opts.points_per_axis.unwrap_or_else(|| dealiased_points(domain)))?;
    let basis = colloc.basis().clone();
    check_field(u0, n, &basis)?;
    let nb = basis.len();
    let lin: Vec<T> = diffusion.iter().flat_map(|&d| basis.functions.iter().map(move |f| -d * f.mu)).collect();
    let npts = colloc.len();

    let rhs = |coeffs: &[T], out: &mut [T]| {
        let values: Vec<Vec<T>> =
            (0..n).into_par_iter().map(|i| colloc.inverse(&coeffs[i * nb..(i + 1) * nb])).collect();
        let mut reaction = vec![vec![T::zero(); npts]; n];
        let pointwise: Vec<Vec<T>> = (0..npts)
            .into_par_iter()
            .map_init(
                || (vec![T::zero(); n], vec![T::zero(); n]),
                |(u, r), j| {
                    for i in 0..n {
                        u[i] = values[i][j];
                    }
                    g(u, r);
                    r.clone()
                },
            )
            .collect();
        for (j, r) in pointwise.iter().enumerate() {
            for i in 0..n {
                reaction[i][j] = r[i];
            }
        }
        let projected: Vec<Vec<T>> = reaction.par_iter().map(|v| colloc.forward(v)).collect();
        for (i, p) in projected.into_iter().enumerate() {
            out[i * nb..(i + 1) * nb].copy_from_slice(&p);
        }
    };
    let pece = PeceOptions {
        corrector_iterations: opts.corrector_iterations,
        blow_up_ceiling: opts.blow_up_ceiling,
        output_stride: opts.output_stride,
    };
    let mut traj = solve_semilinear(alpha, &lin, rhs, u0.coefficients(), grid, pece)?;
    traj.settings.insert("domain".into(), domain.to_json());
    traj.settings.insert("components".into(), json!(n));
    traj.settings.insert("diffusion".into(), Value::Array(diffusion.iter().map(|&d| json_real(d)).collect()));
    traj.settings.insert("points_per_axis".into(), json!(colloc.points_per_axis()));
    Ok(FieldTrajectory { basis, components: n, trajectory: traj })
}
