use fracstab::io::{fmt_real, json_real};
use fracstab::specfun::{ml, MlParams};
use fracstab::C;
use serde_json::json;

use crate::config::MlJob;
use crate::error::{config_err, CliResult};
use crate::output::{headers, Context};

const COLUMNS: [&str; 8] = ["alpha", "beta", "re_z", "im_z", "re_E", "im_E", "est_err", "regime"];

struct Row {
    numbers: [f64; 7],
    regime: &'static str,
}

fn write_rows(ctx: &Context, name: &str, rows: &[Row], meta: serde_json::Value) -> CliResult<std::path::PathBuf> {
    let mut text = COLUMNS.join(",") + "\n";
    for r in rows {
        let cells: Vec<String> = r.numbers.iter().map(|&x| fmt_real(x)).collect();
        text += &format!("{},{}\n", cells.join(","), r.regime);
    }
    let path = ctx.path(name);
    std::fs::write(&path, text).map_err(|e| config_err(format!("cannot write {}: {e}", path.display())))?;
    ctx.write_json(&format!("{}.json", name.trim_end_matches(".csv")), meta)?;
    Ok(path)
}

pub fn run(ctx: &Context, job: MlJob) -> CliResult<()> {
    let alphas = job.alpha.to_vec();
    let betas = job.beta.to_vec();
    let mut points: Vec<C<f64>> = job.z.iter().map(|&[re, im]| C::new(re, im)).collect();
    if let Some(x) = &job.x {
        points.extend(x.values()?.into_iter().map(|x| C::new(x, 0.0)));
    }
    if points.is_empty() && job.decay.is_none() {
        return Err(config_err("nothing to evaluate: give `z`, `x` or `decay`"));
    }

    let mut rows = Vec::new();
    let mut eval = |params: MlParams<f64>, z: C<f64>| -> CliResult<C<f64>> {
        let r = ml(params, z)?;
        rows.push(Row {
            numbers: [params.alpha(), params.beta(), z.re, z.im, r.value.re, r.value.im, r.est_abs_error],
            regime: r.regime.as_str(),
        });
        Ok(r.value)
    };

    let mut decay_files = Vec::new();
    for &alpha in &alphas {
        for &beta in &betas {
            let params = MlParams::new(alpha, beta)?;
            for &z in &points {
                eval(params, z)?;
            }
            if let Some(sweep) = &job.decay {
                let ts = sweep.t.values()?;
                if ts.len() < 2 || ts.iter().any(|&t| t < 0.0) || ts.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(config_err("decay.t must be increasing, nonnegative and have 2 or more points"));
                }
                let mut table = Vec::with_capacity(ts.len());
                for &t in &ts {
                    let v = eval(params, C::new(sweep.lambda * t.powf(alpha), 0.0))?;
                    table.push(vec![t, v.re]);
                }
                let name = format!("decay_{}.csv", decay_files.len());
                let t_end = *ts.last().expect("two or more points");
                ctx.write_table(
                    &name,
                    &headers(&["t", "x_1"]),
                    &table,
                    json!({
                        "alpha": json_real(alpha),
                        "beta": json_real(beta),
                        "lambda": json_real(sweep.lambda),
                        "t_end": json_real(t_end),
                        "steps": ts.len() - 1,
                        "dimension": 1,
                    }),
                )?;
                decay_files.push(name);
            }
        }
    }

    let path = write_rows(ctx, "ml.csv", &rows, json!({"rows": rows.len(), "decay_tables": decay_files}))?;
    println!("wrote {} ({} rows)", path.display(), rows.len());
    for f in &decay_files {
        println!("wrote {}", ctx.path(f).display());
    }
    Ok(())
}
