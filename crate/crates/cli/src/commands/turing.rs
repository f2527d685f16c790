use fracstab::io::json_real;
use fracstab::linalg::eigenvalues;
use fracstab::rdsim::eigenbasis;
use fracstab::stability::{critical_d1, mode_matrix, turing_scan, turing_scan_with_modes, RDSpec};
use serde_json::json;

use crate::config::{matrix, TuringJob};
use crate::error::{config_err, CliResult};
use crate::output::{headers, Context};

pub fn run(ctx: &Context, job: TuringJob) -> CliResult<()> {
    let a = matrix(&job.matrix)?;
    if a.dim() != 2 {
        return Err(config_err("the Turing scan needs a 2x2 matrix"));
    }
    let (p, q, r, s) = (a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]);
    let [d1, d2] = job.diffusion;

    let (report, mu_max, mus) = match (&job.domain, job.mu_max) {
        (Some(_), Some(_)) => return Err(config_err("give either `mu_max` or `domain`, not both")),
        (None, None) => return Err(config_err("one of `mu_max` or `domain` is required")),
        (None, Some(mu_max)) => (turing_scan(job.alpha, p, q, r, s, d1, d2, mu_max)?, mu_max, None),
        (Some(dc), None) => {
            let mus = eigenbasis(&dc.build()?).mus();
            let report = turing_scan_with_modes(job.alpha, p, q, r, s, d1, d2, &mus)?;
            let mu_max = mus.iter().copied().fold(0.0, f64::max);
            (report, mu_max, Some(mus))
        }
    };

    let mut body = report.to_json();
    body["mu_max"] = json_real(mu_max);
    if let Some(mus) = &mus {
        body["mus"] = mus.iter().map(|&m| json_real(m)).collect::<Vec<_>>().into();
    }
    if let Some([lo, hi]) = job.critical_d1 {
        body["critical_d1"] = json_real(critical_d1(job.alpha, p, q, r, s, d2, (lo, hi))?);
    }
    let report_path = ctx.write_json("turing.json", body)?;

    if job.dispersion_points < 2 {
        return Err(config_err("dispersion_points must be at least 2"));
    }
    let spec = RDSpec::new(a, vec![d1, d2], job.alpha)?;
    let last = (job.dispersion_points - 1) as f64;
    let rows = (0..job.dispersion_points)
        .map(|i| {
            let mu = mu_max * i as f64 / last;
            let growth = eigenvalues(&mode_matrix(&spec, mu)?)?.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
            Ok(vec![mu, growth])
        })
        .collect::<CliResult<Vec<_>>>()?;
    let curve_path = ctx.write_table(
        "dispersion.csv",
        &headers(&["mu", "max_re_lambda"]),
        &rows,
        json!({"points": rows.len(), "mu_max": json_real(mu_max)}),
    )?;

    let window = match report.window {
        Some((lo, hi)) => format!("window [{lo}, {hi}]"),
        None => "no window".to_string(),
    };
    println!("{window} ({}, {})", report_path.display(), curve_path.display());
    Ok(())
}
