use fracstab::fode::Trajectory;
use fracstab::rdsim::{fit_samples, fit_trajectory, RateKind};
use serde_json::{json, Value};

use crate::config::FitJob;
use crate::error::{config_err, CliResult};
use crate::output::Context;

/// Series to fit: the state norm, or |component| of one mode or state entry.
fn select(traj: &Trajectory<f64>, mode: Option<usize>, component: Option<usize>) -> CliResult<Option<Vec<f64>>> {
    let dim = traj.dim();
    let Some(b) = mode else {
        return match component {
            None => Ok(None),
            Some(i) if i < dim => Ok(Some(traj.component(i).iter().map(|x| x.abs()).collect())),
            Some(i) => Err(config_err(format!("component {i} outside the state dimension {dim}"))),
        };
    };
    let components = traj
        .settings
        .get("components")
        .and_then(Value::as_u64)
        .ok_or_else(|| config_err("`mode` needs a field trajectory (sidecar without `components`)"))?
        as usize;
    let modes = dim / components.max(1);
    if b >= modes {
        return Err(config_err(format!("mode {b} outside the {modes} stored modes")));
    }
    if component.is_some_and(|i| i >= components) {
        return Err(config_err(format!("component outside the {components} field components")));
    }
    Ok(Some(
        traj.states
            .iter()
            .map(|s| match component {
                Some(i) => s[i * modes + b].abs(),
                None => (0..components).map(|i| s[i * modes + b].powi(2)).sum::<f64>().sqrt(),
            })
            .collect(),
    ))
}

pub fn run(ctx: &Context, job: FitJob) -> CliResult<()> {
    let kind = RateKind::parse(&job.kind)
        .ok_or_else(|| config_err(format!("unknown kind {:?} (algebraic_decay or exponential_growth)", job.kind)))?;
    let source = ctx.resolve(&job.trajectory);
    let traj = Trajectory::<f64>::read(&source)?;
    let window = (job.window[0], job.window[1]);
    let fit = match select(&traj, job.mode, job.component)? {
        None => fit_trajectory(&traj, window, kind)?,
        Some(values) => {
            if window.0 < 0.0 || window.1 > traj.grid.t_end() * (1.0 + 1e-12) {
                return Err(config_err(format!("window outside [0, {}]", traj.grid.t_end())));
            }
            fit_samples(&traj.times, &values, window, kind)?
        }
    };
    let mut body = fit.to_json();
    body["trajectory"] = json!(source.display().to_string());
    body["mode"] = json!(job.mode);
    body["component"] = json!(job.component);
    let path = ctx.write_json("fit.json", body)?;
    println!("{} = {} (r² = {}, {})", kind.as_str(), fit.value, fit.r_squared, path.display());
    Ok(())
}
