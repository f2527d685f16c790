use crate::error::{Error, Result};
use crate::scalar::Real;

/// Node placement on [0, t_end].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Spacing<T> {
    Uniform,
    /// t_j = t_end·(j/steps)^γ with γ ≥ 1, clustering nodes near t = 0.
    Graded(T),
}

/// Time grid 0 = t_0 < t_1 < … < t_steps = t_end.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid<T> {
    t_end: T,
    steps: usize,
    spacing: Spacing<T>,
}

impl<T: Real> TimeGrid<T> {
    pub fn new(t_end: T, steps: usize, spacing: Spacing<T>) -> Result<Self> {
        if !(t_end > T::zero() && t_end.is_finite()) {
            return Err(Error::InvalidParameter(format!("t_end = {t_end} must be positive and finite")));
        }
        if steps == 0 {
            return Err(Error::InvalidParameter("steps must be positive".into()));
        }
        if let Spacing::Graded(g) = spacing {
            if !(g >= T::one() && g.is_finite()) {
                return Err(Error::InvalidParameter(format!("grading exponent {g} must be >= 1")));
            }
        }
        Ok(Self { t_end, steps, spacing })
    }

    pub fn uniform(t_end: T, steps: usize) -> Result<Self> {
        Self::new(t_end, steps, Spacing::Uniform)
    }

    pub fn graded(t_end: T, steps: usize, gamma: T) -> Result<Self> {
        Self::new(t_end, steps, Spacing::Graded(gamma))
    }

    /// Graded grid with the exponent γ = 2/α suited to a t^α initial layer.
    pub fn graded_for_order(t_end: T, steps: usize, alpha: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha <= T::one()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1]")));
        }
        Self::graded(t_end, steps, T::lit(2.0) / alpha)
    }

    pub fn t_end(&self) -> T {
        self.t_end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn spacing(&self) -> Spacing<T> {
        self.spacing
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self.spacing, Spacing::Uniform)
    }

    /// Uniform step size (t_end/steps); for graded grids, the mean step.
    pub fn step(&self) -> T {
        self.t_end / T::from_usize(self.steps)
    }

    pub fn node(&self, j: usize) -> T {
        if j >= self.steps {
            return self.t_end;
        }
        let r = T::from_usize(j) / T::from_usize(self.steps);
        match self.spacing {
            Spacing::Uniform => T::from_usize(j) * self.step(),
            Spacing::Graded(g) => self.t_end * r.powf(g),
        }
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..=self.steps).map(|j| self.node(j)).collect()
    }

    /// Index of the node closest to `t` (clamped to the grid).
    pub fn nearest_index(&self, t: T) -> usize {
        let nodes = self.nodes();
        let mut best = 0;
        for (j, &tj) in nodes.iter().enumerate() {
            if (tj - t).abs() < (nodes[best] - t).abs() {
                best = j;
            }
        }
        best
    }
}
