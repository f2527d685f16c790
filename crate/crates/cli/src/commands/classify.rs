use std::f64::consts::FRAC_PI_2;

use fracstab::io::json_real;
use fracstab::stability::{classify_matrix, trace_det_classify, DEFAULT_ANGULAR_TOL};
use serde_json::json;

use crate::config::{matrix, ClassifyJob};
use crate::error::CliResult;
use crate::output::Context;

pub fn run(ctx: &Context, job: ClassifyJob) -> CliResult<()> {
    let a = matrix(&job.matrix)?;
    let tol = job.tol.unwrap_or(DEFAULT_ANGULAR_TOL);
    let verdict = classify_matrix(job.alpha, &a, tol)?;

    let mut body = verdict.to_json();
    let half = job.alpha * FRAC_PI_2;
    let margins: Vec<_> = verdict
        .eigenvalues
        .iter()
        .map(|z| if z.norm() == 0.0 { json_real(-half) } else { json_real(z.arg().abs() - half) })
        .collect();
    body["alpha"] = json_real(job.alpha);
    body["angular_tol"] = json_real(tol);
    body["margins"] = margins.into();
    if a.dim() == 2 {
        let (p, q, r, s) = (a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]);
        let td = trace_det_classify(job.alpha, p, q, r, s);
        body["trace_det"] = json!({
            "trace": json_real(p + s),
            "det": json_real(p * s - q * r),
            "status": td.status.as_str(),
            "agrees": td.status == verdict.status,
        });
    }
    let path = ctx.write_json("verdict.json", body)?;
    println!("{} ({})", verdict.status.as_str(), path.display());
    Ok(())
}
