use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fode::grid::{Spacing, TimeGrid};
use crate::io;
use crate::scalar::Real;

/// Method that produced a trajectory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Duhamel,
    Pece,
    ModeResolvent,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Duhamel => "duhamel",
            Scheme::Pece => "pece",
            Scheme::ModeResolvent => "mode_resolvent",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "duhamel" => Some(Scheme::Duhamel),
            "pece" => Some(Scheme::Pece),
            "mode_resolvent" => Some(Scheme::ModeResolvent),
            _ => None,
        }
    }
}

/// Where and why a run was cut short.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlowUp<T> {
    /// Index (into the stored states) of the first node that was not produced.
    pub index: usize,
    pub time: T,
    pub norm: T,
}

/// States of a solution at the stored times.
///
/// When a run is truncated by blow-up detection, `states` ends before the
/// grid does and `blow_up` records where.
#[derive(Clone, Debug)]
pub struct Trajectory<T> {
    pub grid: TimeGrid<T>,
    pub alpha: T,
    pub scheme: Scheme,
    pub times: Vec<T>,
    pub states: Vec<Vec<T>>,
    pub blow_up: Option<BlowUp<T>>,
    /// Scheme-specific settings echoed into the sidecar.
    pub settings: Map<String, Value>,
}

impl<T: Real> Trajectory<T> {
    pub(crate) fn new(grid: TimeGrid<T>, alpha: T, scheme: Scheme) -> Self {
        Self { grid, alpha, scheme, times: Vec::new(), states: Vec::new(), blow_up: None, settings: Map::new() }
    }

    pub(crate) fn push(&mut self, t: T, state: Vec<T>) {
        self.times.push(t);
        self.states.push(state);
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.states.first().map_or(0, Vec::len)
    }

    pub fn is_truncated(&self) -> bool {
        self.blow_up.is_some()
    }

    /// `Err(BlowUp)` if the run was truncated.
    pub fn complete(self) -> Result<Self> {
        match self.blow_up {
            Some(b) => Err(Error::BlowUp { time: b.time.as_f64(), norm: b.norm.as_f64() }),
            None => Ok(self),
        }
    }

    pub fn last(&self) -> Option<&[T]> {
        self.states.last().map(Vec::as_slice)
    }

    /// Euclidean norm of every stored state.
    pub fn norms(&self) -> Vec<T> {
        self.states.iter().map(|s| euclid(s)).collect()
    }

    /// Component `i` over time.
    pub fn component(&self, i: usize) -> Vec<T> {
        self.states.iter().map(|s| s[i]).collect()
    }

    pub fn csv_header(&self) -> Vec<String> {
        std::iter::once("t".to_string()).chain((1..=self.dim()).map(|i| format!("x_{i}"))).collect()
    }

    pub fn sidecar(&self) -> Value {
        let spacing = match self.grid.spacing() {
            Spacing::Uniform => json!({"kind": "uniform"}),
            Spacing::Graded(g) => json!({"kind": "graded", "exponent": io::json_real(g)}),
        };
        let truncated = self
            .blow_up
            .map(|b| json!({"index": b.index, "time": io::json_real(b.time), "norm": io::json_real(b.norm)}));
        json!({
            "alpha": io::json_real(self.alpha),
            "scheme": self.scheme.as_str(),
            "steps": self.grid.steps(),
            "t_end": io::json_real(self.grid.t_end()),
            "spacing": spacing,
            "dimension": self.dim(),
            "stored_nodes": self.len(),
            "truncated": truncated,
            "settings": Value::Object(self.settings.clone()),
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    /// Writes `path` (CSV, header `t,x_1,…,x_n`) and its JSON sidecar.
    pub fn write(&self, path: &Path) -> Result<()> {
        let rows: Vec<Vec<T>> = self
            .times
            .iter()
            .zip(&self.states)
            .map(|(&t, s)| std::iter::once(t).chain(s.iter().copied()).collect())
            .collect();
        io::write_csv(path, &self.csv_header(), &rows)?;
        io::write_json(&io::sidecar_path(path), &self.sidecar())
    }

    /// Reads a trajectory written by [`Trajectory::write`]. Metadata comes from
    /// the sidecar when present; otherwise the grid is inferred from the times.
    pub fn read(path: &Path) -> Result<Self> {
        let (header, rows) = io::read_csv(path)?;
        if header.first().map(String::as_str) != Some("t") || rows.is_empty() {
            return Err(Error::InsufficientData(format!("{} is not a trajectory table", path.display())));
        }
        let times: Vec<T> = rows.iter().map(|r| T::lit(r[0])).collect();
        let states: Vec<Vec<T>> = rows.iter().map(|r| r[1..].iter().map(|&x| T::lit(x)).collect()).collect();
        let side = io::read_json(&io::sidecar_path(path)).ok();
        let num = |key: &str| side.as_ref().and_then(|s| s.get(key)).and_then(Value::as_f64);
        let alpha = T::lit(num("alpha").unwrap_or(1.0));
        let scheme = side
            .as_ref()
            .and_then(|s| s.get("scheme"))
            .and_then(Value::as_str)
            .and_then(Scheme::parse)
            .unwrap_or(Scheme::Pece);
        let t_last = *times.last().expect("non-empty");
        let t_end = num("t_end").map(T::lit).unwrap_or(t_last);
        let steps = num("steps").map(|s| s as usize).unwrap_or(times.len().saturating_sub(1).max(1));
        let spacing = match side.as_ref().and_then(|s| s.pointer("/spacing/exponent")).and_then(Value::as_f64) {
            Some(g) => Spacing::Graded(T::lit(g)),
            None => Spacing::Uniform,
        };
        let grid = TimeGrid::new(if t_end > T::zero() { t_end } else { T::one() }, steps, spacing)?;
        let blow_up = side.as_ref().and_then(|s| s.get("truncated")).filter(|v| !v.is_null()).map(|v| BlowUp {
            index: v.get("index").and_then(Value::as_u64).unwrap_or(times.len() as u64) as usize,
            time: T::lit(v.get("time").and_then(Value::as_f64).unwrap_or(f64::NAN)),
            norm: T::lit(v.get("norm").and_then(Value::as_f64).unwrap_or(f64::NAN)),
        });
        let settings =
            side.as_ref().and_then(|s| s.get("settings")).and_then(Value::as_object).cloned().unwrap_or_default();
        Ok(Self { grid, alpha, scheme, times, states, blow_up, settings })
    }
}

pub(crate) fn euclid<T: Real>(v: &[T]) -> T {
    let scale = v.iter().fold(T::zero(), |m, x| m.max(x.abs()));
    if scale == T::zero() || !scale.is_finite() {
        return scale;
    }
    scale * v.iter().map(|&x| (x / scale) * (x / scale)).sum::<T>().sqrt()
}
