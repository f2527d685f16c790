use fracstab::fode::{solve_linear, solve_nonlinear_with, LinearFDE, PeceOptions, Trajectory, DEFAULT_BLOW_UP_CEILING};
use fracstab::linalg::DenseMatrix;
use fracstab::rdsim::{
    eigenbasis, simulate_linear_rd, simulate_nonlinear_rd, Collocation, DomainSpec, Field, FieldTrajectory, RdOptions,
};
use fracstab::stability::RDSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{matrix, InitialConfig, Model, Monomial, SimulateJob};
use crate::error::{config_err, CliError, CliResult};
use crate::output::Context;

/// u ↦ A u + Σ polynomial terms, evaluated pointwise.
struct Reaction {
    linear: Option<DenseMatrix<f64>>,
    terms: Vec<Vec<Monomial>>,
}

impl Reaction {
    fn eval(&self, u: &[f64], out: &mut [f64]) {
        match &self.linear {
            Some(a) => out.copy_from_slice(&a.matvec(u)),
            None => out.fill(0.0),
        }
        for (o, terms) in out.iter_mut().zip(&self.terms) {
            for m in terms {
                *o += m.coef * m.powers.iter().zip(u).map(|(&p, &x)| x.powi(p as i32)).product::<f64>();
            }
        }
    }
}

struct Setup {
    components: usize,
    linear: Option<DenseMatrix<f64>>,
    reaction: Option<Vec<Vec<Monomial>>>,
}

fn setup(job: &SimulateJob) -> CliResult<Setup> {
    let linear = job.matrix.as_deref().map(matrix).transpose()?;
    let components = match (&linear, &job.reaction, job.model) {
        (Some(a), _, _) => a.dim(),
        (None, Some(r), _) => r.len(),
        (None, None, Model::Fode) => return Err(config_err("a fode simulation needs `matrix` or `reaction`")),
        (None, None, Model::Rd) => job.diffusion.as_ref().map_or(0, Vec::len),
    };
    if components == 0 {
        return Err(config_err("the system has no components"));
    }
    if let Some(terms) = &job.reaction {
        if terms.len() != components {
            return Err(config_err(format!("reaction has {} components, expected {components}", terms.len())));
        }
        if terms.iter().flatten().any(|m| m.powers.len() != components) {
            return Err(config_err(format!("every monomial needs {components} powers")));
        }
    }
    Ok(Setup { components, linear, reaction: job.reaction.clone() })
}

/// A truncated run is an error unless the config expects blow-up.
fn finish(job: &SimulateJob, traj: &Trajectory<f64>) -> CliResult<()> {
    match traj.blow_up {
        Some(b) if !job.expect_blow_up => Err(CliError::BlowUp { time: b.time, norm: b.norm }),
        Some(b) => {
            println!("truncated at t = {} (expected)", b.time);
            Ok(())
        }
        None => Ok(()),
    }
}

pub fn run(ctx: &Context, job: SimulateJob) -> CliResult<()> {
    let sys = setup(&job)?;
    let grid = job.grid.build(job.alpha)?;
    let ceiling = job.blow_up_ceiling.unwrap_or(DEFAULT_BLOW_UP_CEILING);
    let stride = job.output_stride.unwrap_or(1);
    if stride == 0 {
        return Err(config_err("output_stride must be positive"));
    }
    match job.model {
        Model::Fode => {
            let rd_only = job.diffusion.is_some()
                || job.domain.is_some()
                || job.initial.is_some()
                || job.points_per_axis.is_some()
                || job.mode_energy
                || job.snapshot;
            if rd_only {
                return Err(config_err(
                    "diffusion, domain, initial, points_per_axis, mode_energy and snapshot apply to rd models only",
                ));
            }
            let u0 = job.u0.as_ref().ok_or_else(|| config_err("a fode simulation needs `u0`"))?;
            if u0.len() != sys.components {
                return Err(config_err(format!("u0 has {} entries, expected {}", u0.len(), sys.components)));
            }
            let traj = match sys.reaction {
                None => {
                    let a = sys.linear.expect("checked in setup");
                    let fde = LinearFDE::new(a, job.alpha)?.with_blow_up_ceiling(ceiling);
                    thin(solve_linear(&fde, u0, &grid)?, stride)
                }
                Some(terms) => {
                    let reaction = Reaction { linear: sys.linear, terms };
                    let opts = PeceOptions {
                        corrector_iterations: job.corrector_iterations.unwrap_or(1),
                        blow_up_ceiling: ceiling,
                        output_stride: stride,
                    };
                    solve_nonlinear_with(job.alpha, |u: &[f64], o: &mut [f64]| reaction.eval(u, o), u0, &grid, opts)?
                }
            };
            let path = ctx.path("trajectory.csv");
            traj.write(&path)?;
            ctx.stamp_sidecar(&path)?;
            println!("wrote {} ({} nodes)", path.display(), traj.len());
            finish(&job, &traj)
        }
        Model::Rd => {
            if job.u0.is_some() {
                return Err(config_err("rd models take `initial`, not `u0`"));
            }
            let domain = job.domain.as_ref().ok_or_else(|| config_err("an rd simulation needs `domain`"))?.build()?;
            let diffusion = job.diffusion.clone().ok_or_else(|| config_err("an rd simulation needs `diffusion`"))?;
            if diffusion.len() != sys.components {
                return Err(config_err(format!(
                    "diffusion has {} entries, expected {}",
                    diffusion.len(),
                    sys.components
                )));
            }
            let u0 = initial_field(&domain, sys.components, job.initial.as_ref(), ctx.seed)?;
            let opts = RdOptions {
                points_per_axis: job.points_per_axis,
                corrector_iterations: job.corrector_iterations.unwrap_or(1),
                blow_up_ceiling: ceiling,
                output_stride: stride,
            };
            let field = match sys.reaction {
                None => {
                    let a = sys.linear.unwrap_or_else(|| DenseMatrix::zeros(sys.components));
                    simulate_linear_rd(&RDSpec::new(a, diffusion, job.alpha)?, &domain, &u0, &grid, opts)?
                }
                Some(terms) => {
                    let reaction = Reaction { linear: sys.linear, terms };
                    let g = |u: &[f64], o: &mut [f64]| reaction.eval(u, o);
                    simulate_nonlinear_rd(job.alpha, g, &diffusion, &domain, &u0, &grid, opts)?
                }
            };
            write_field(ctx, &job, &domain, &field)?;
            finish(&job, &field.trajectory)
        }
    }
}

/// Keeps every `stride`-th node and the last one.
fn thin(mut traj: Trajectory<f64>, stride: usize) -> Trajectory<f64> {
    if stride > 1 {
        let last = traj.len().saturating_sub(1);
        let keep: Vec<bool> = (0..traj.len()).map(|m| m % stride == 0 || m == last).collect();
        let mut flags = keep.iter();
        traj.times.retain(|_| *flags.next().expect("one flag per node"));
        let mut flags = keep.iter();
        traj.states.retain(|_| *flags.next().expect("one flag per node"));
        if let Some(b) = traj.blow_up.as_mut() {
            b.index = traj.times.len();
        }
    }
    traj
}

fn initial_field(domain: &DomainSpec<f64>, n: usize, init: Option<&InitialConfig>, seed: u64) -> CliResult<Field<f64>> {
    let basis = eigenbasis(domain);
    let nb = basis.len();
    let mut coeffs = vec![0.0; n * nb];
    let Some(init) = init else {
        return Ok(Field::from_coefficients(n, nb, coeffs)?);
    };
    if let Some(c) = &init.constant {
        if c.len() != n {
            return Err(config_err(format!("initial.constant has {} entries, expected {n}", c.len())));
        }
        let grid = Collocation::dealiased(domain)?;
        let projected = Field::from_fn(&grid, n, |_| c.clone())?;
        for (x, p) in coeffs.iter_mut().zip(projected.coefficients()) {
            *x += p;
        }
    }
    for m in &init.modes {
        let b = basis
            .position(&m.wave_numbers)
            .ok_or_else(|| config_err(format!("wave numbers {:?} are not among the retained modes", m.wave_numbers)))?;
        if m.amplitude.len() != n {
            return Err(config_err(format!("mode amplitude has {} entries, expected {n}", m.amplitude.len())));
        }
        for (i, &amp) in m.amplitude.iter().enumerate() {
            coeffs[i * nb + b] += amp;
        }
    }
    if let Some(noise) = init.noise {
        if !(noise >= 0.0) {
            return Err(config_err("initial.noise must be nonnegative"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for x in &mut coeffs {
            *x += noise * rng.gen_range(-1.0..=1.0);
        }
    }
    Ok(Field::from_coefficients(n, nb, coeffs)?)
}

fn write_field(
    ctx: &Context,
    job: &SimulateJob,
    domain: &DomainSpec<f64>,
    field: &FieldTrajectory<f64>,
) -> CliResult<()> {
    let path = ctx.path("trajectory.csv");
    field.write(&path)?;
    ctx.stamp_sidecar(&path)?;
    println!("wrote {} ({} nodes)", path.display(), field.len());
    if job.mode_energy {
        let path = ctx.path("mode_energy.csv");
        field.write_mode_energy(&path)?;
        ctx.stamp_sidecar(&path)?;
        println!("wrote {}", path.display());
    }
    if job.snapshot && !field.is_empty() {
        let grid = match job.points_per_axis {
            Some(m) => Collocation::new(domain, m)?,
            None => Collocation::dealiased(domain)?,
        };
        let path = ctx.path("snapshot.csv");
        field.write_snapshot(&path, &grid, field.len() - 1)?;
        ctx.stamp_sidecar(&path)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use fracstab::fode::TimeGrid;

    #[test]
    fn reaction_adds_linear_part_and_monomials() {
        let r = Reaction {
            linear: Some(DenseMatrix::from_rows(&[vec![1.0, -1.0], vec![2.0, -1.5]]).unwrap()),
            terms: vec![
                vec![Monomial { coef: -1.0, powers: vec![3, 0] }],
                vec![Monomial { coef: 0.5, powers: vec![1, 1] }],
            ],
        };
        let mut out = [0.0; 2];
        r.eval(&[2.0, 3.0], &mut out);
        assert_eq!(out, [2.0 - 3.0 - 8.0, 4.0 - 4.5 + 3.0]);
    }

    #[test]
    fn thinning_keeps_the_last_node() {
        let grid = TimeGrid::uniform(1.0, 10).unwrap();
        let fde = LinearFDE::new(DenseMatrix::diagonal(&[-1.0]), 1.0).unwrap();
        let full = solve_linear(&fde, &[1.0], &grid).unwrap();
        let thin = thin(full.clone(), 4);
        assert_eq!(thin.times.len(), 4);
        assert_eq!(thin.times[..3], [full.times[0], full.times[4], full.times[8]]);
        assert_eq!(thin.states.last(), full.states.last());
    }

    #[test]
    fn noise_is_seeded() {
        let d = DomainSpec::interval(1.0, fracstab::rdsim::Boundary::Neumann, 4).unwrap();
        let init = InitialConfig { noise: Some(0.1), ..Default::default() };
        let a = initial_field(&d, 2, Some(&init), 7).unwrap();
        let b = initial_field(&d, 2, Some(&init), 7).unwrap();
        let c = initial_field(&d, 2, Some(&init), 8).unwrap();
        assert_eq!(a.coefficients(), b.coefficients());
        assert_ne!(a.coefficients(), c.coefficients());
        assert!(a.coefficients().iter().all(|x| x.abs() <= 0.1));
    }
}
