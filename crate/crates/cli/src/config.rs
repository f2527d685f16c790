//! JSON schemas of the command configs. Unknown keys are rejected.

use fracstab::fode::TimeGrid;
use fracstab::linalg::DenseMatrix;
use fracstab::rdsim::{Boundary, DomainSpec};
use serde::Deserialize;

use crate::error::{config_err, CliResult};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

/// Explicit sample points or an evenly spaced range.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Samples {
    List(Vec<f64>),
    Range(RangeSpec),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub start: f64,
    pub end: f64,
    pub points: usize,
    #[serde(default)]
    pub spacing: RangeSpacing,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum RangeSpacing {
    #[default]
    Linear,
    Log,
}

impl Samples {
    pub fn values(&self) -> CliResult<Vec<f64>> {
        match self {
            Samples::List(v) => Ok(v.clone()),
            Samples::Range(r) => {
                if r.points < 2 {
                    return Err(config_err("a range needs at least 2 points"));
                }
                let last = (r.points - 1) as f64;
                match r.spacing {
                    RangeSpacing::Linear => {
                        Ok((0..r.points).map(|i| r.start + (r.end - r.start) * i as f64 / last).collect())
                    }
                    RangeSpacing::Log => {
                        if !(r.start > 0.0 && r.end > 0.0) {
                            return Err(config_err("log ranges need positive endpoints"));
                        }
                        let ratio = r.end / r.start;
                        Ok((0..r.points).map(|i| r.start * ratio.powf(i as f64 / last)).collect())
                    }
                }
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MlJob {
    pub alpha: OneOrMany<f64>,
    #[serde(default = "unit_beta")]
    pub beta: OneOrMany<f64>,
    /// Complex arguments as `[re, im]`.
    #[serde(default)]
    pub z: Vec<[f64; 2]>,
    /// Real arguments.
    pub x: Option<Samples>,
    /// E_{α,β}(λ t^α) over `t`, also written as fit-ready trajectories.
    pub decay: Option<DecaySweep>,
}

fn unit_beta() -> OneOrMany<f64> {
    OneOrMany::One(1.0)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecaySweep {
    /// Rate in ∂_t^α u = λ u; tabulates E_α(λ t^α), so decay needs λ < 0.
    pub lambda: f64,
    pub t: Samples,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassifyJob {
    pub alpha: f64,
    pub matrix: Vec<Vec<f64>>,
    pub tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TuringJob {
    pub alpha: f64,
    pub matrix: Vec<Vec<f64>>,
    pub diffusion: [f64; 2],
    /// Upper end of the scanned μ range; alternatively give a domain.
    pub mu_max: Option<f64>,
    /// Scan only the Laplacian eigenvalues of this domain.
    pub domain: Option<DomainConfig>,
    #[serde(default = "default_dispersion_points")]
    pub dispersion_points: usize,
    /// Search bracket for the critical D₁.
    pub critical_d1: Option<[f64; 2]>,
}

fn default_dispersion_points() -> usize {
    401
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ShapeName {
    Interval,
    Rectangle,
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum BcName {
    Neumann,
    Dirichlet,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub shape: ShapeName,
    pub length: Option<f64>,
    pub lx: Option<f64>,
    pub ly: Option<f64>,
    pub bc: BcName,
    /// Modes per axis.
    pub modes: usize,
}

impl DomainConfig {
    pub fn build(&self) -> CliResult<DomainSpec<f64>> {
        let bc = match self.bc {
            BcName::Neumann => Boundary::Neumann,
            BcName::Dirichlet => Boundary::Dirichlet,
        };
        let need = |v: Option<f64>, key: &str| v.ok_or_else(|| config_err(format!("domain.{key} is required")));
        Ok(match self.shape {
            ShapeName::Interval => {
                if self.lx.is_some() || self.ly.is_some() {
                    return Err(config_err("an interval takes `length`, not `lx`/`ly`"));
                }
                DomainSpec::interval(need(self.length, "length")?, bc, self.modes)?
            }
            ShapeName::Rectangle => {
                if self.length.is_some() {
                    return Err(config_err("a rectangle takes `lx` and `ly`, not `length`"));
                }
                DomainSpec::rectangle(need(self.lx, "lx")?, need(self.ly, "ly")?, bc, self.modes)?
            }
        })
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Fode,
    Rd,
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum GridSpacing {
    #[default]
    Uniform,
    Graded,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub t_end: f64,
    pub steps: usize,
    #[serde(default)]
    pub spacing: GridSpacing,
    /// Grading exponent; defaults to 2/α.
    pub grading: Option<f64>,
}

impl GridConfig {
    pub fn build(&self, alpha: f64) -> CliResult<TimeGrid<f64>> {
        Ok(match (self.spacing, self.grading) {
            (GridSpacing::Uniform, None) => TimeGrid::uniform(self.t_end, self.steps)?,
            (GridSpacing::Uniform, Some(_)) => return Err(config_err("`grading` needs spacing \"graded\"")),
            (GridSpacing::Graded, Some(g)) => TimeGrid::graded(self.t_end, self.steps, g)?,
            (GridSpacing::Graded, None) => TimeGrid::graded_for_order(self.t_end, self.steps, alpha)?,
        })
    }
}

/// c · Π u_i^{p_i}.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Monomial {
    pub coef: f64,
    pub powers: Vec<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeAmplitude {
    pub wave_numbers: Vec<usize>,
    pub amplitude: Vec<f64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    /// Spatially constant part, one value per component.
    pub constant: Option<Vec<f64>>,
    #[serde(default)]
    pub modes: Vec<ModeAmplitude>,
    /// Uniform random coefficients in [−noise, noise], drawn from the seed.
    pub noise: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateJob {
    pub model: Model,
    pub alpha: f64,
    pub grid: GridConfig,
    /// Linear part A.
    pub matrix: Option<Vec<Vec<f64>>>,
    /// Polynomial reaction terms per component, added to A u.
    pub reaction: Option<Vec<Vec<Monomial>>>,
    pub u0: Option<Vec<f64>>,
    pub diffusion: Option<Vec<f64>>,
    pub domain: Option<DomainConfig>,
    pub initial: Option<InitialConfig>,
    pub corrector_iterations: Option<usize>,
    pub blow_up_ceiling: Option<f64>,
    pub output_stride: Option<usize>,
    pub points_per_axis: Option<usize>,
    #[serde(default)]
    pub expect_blow_up: bool,
    #[serde(default)]
    pub mode_energy: bool,
    #[serde(default)]
    pub snapshot: bool,
    /// Noise seed; read before parsing, since `--seed` takes precedence.
    #[serde(rename = "seed")]
    pub _seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitJob {
    pub trajectory: String,
    pub window: [f64; 2],
    pub kind: String,
    /// Fit one Galerkin mode of a field trajectory instead of the full norm.
    pub mode: Option<usize>,
    /// Fit |u_i| (or the i-th component of the selected mode).
    pub component: Option<usize>,
}

pub fn matrix(rows: &[Vec<f64>]) -> CliResult<DenseMatrix<f64>> {
    if rows.is_empty() {
        return Err(config_err("matrix is empty"));
    }
    Ok(DenseMatrix::from_rows(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_include_both_ends() {
        let log: Samples = serde_json::from_str(r#"{"start": 1, "end": 1000, "points": 4, "spacing": "log"}"#).unwrap();
        let v = log.values().unwrap();
        assert_eq!(v.len(), 4);
        assert!((v[1] - 10.0).abs() < 1e-12 && (v[3] - 1000.0).abs() < 1e-9);
        let lin: Samples = serde_json::from_str(r#"{"start": -1, "end": 1, "points": 3}"#).unwrap();
        assert_eq!(lin.values().unwrap(), vec![-1.0, 0.0, 1.0]);
        let list: Samples = serde_json::from_str("[0.5, 2]").unwrap();
        assert_eq!(list.values().unwrap(), vec![0.5, 2.0]);
        let bad: Samples = serde_json::from_str(r#"{"start": 0, "end": 1, "points": 5, "spacing": "log"}"#).unwrap();
        assert!(bad.values().is_err());
    }

    #[test]
    fn grids_and_domains() {
        let g: GridConfig = serde_json::from_str(r#"{"t_end": 2, "steps": 8, "spacing": "graded"}"#).unwrap();
        let grid = g.build(0.5).unwrap();
        assert!((grid.node(4) - 2.0 * 0.5f64.powi(4)).abs() < 1e-15);
        let g: GridConfig = serde_json::from_str(r#"{"t_end": 2, "steps": 8, "grading": 2}"#).unwrap();
        assert!(g.build(0.5).is_err());

        let d: DomainConfig =
            serde_json::from_str(r#"{"shape": "rectangle", "lx": 1, "ly": 2, "bc": "dirichlet", "modes": 3}"#).unwrap();
        assert_eq!(d.build().unwrap().lengths(), vec![1.0, 2.0]);
        let d: DomainConfig = serde_json::from_str(r#"{"shape": "interval", "bc": "neumann", "modes": 3}"#).unwrap();
        assert!(d.build().is_err());
        assert!(serde_json::from_str::<DomainConfig>(r#"{"shape": "disc", "bc": "neumann", "modes": 3}"#).is_err());
    }
}
