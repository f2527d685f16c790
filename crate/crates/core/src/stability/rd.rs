use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::json_real;
use crate::linalg::DenseMatrix;
use crate::scalar::Real;
use crate::stability::verdict::{classify_matrix, StabilityVerdict, Status};

/// Linearized reaction–diffusion system ∂_t^α u = DΔu + Au.
#[derive(Clone, Debug, PartialEq)]
pub struct RDSpec<T> {
    a: DenseMatrix<T>,
    diffusion: Vec<T>,
    alpha: T,
}

impl<T: Real> RDSpec<T> {
    pub fn new(a: DenseMatrix<T>, diffusion: Vec<T>, alpha: T) -> Result<Self> {
        if diffusion.len() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: diffusion.len() });
        }
        if diffusion.iter().any(|&d| !(d > T::zero() && d.is_finite())) {
            return Err(Error::InvalidParameter("diffusion coefficients must be positive".into()));
        }
        if !(alpha > T::zero() && alpha <= T::one()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1]")));
        }
        Ok(Self { a, diffusion, alpha })
    }

    pub fn matrix(&self) -> &DenseMatrix<T> {
        &self.a
    }

    pub fn diffusion(&self) -> &[T] {
        &self.diffusion
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }
}

/// A_{D,k} = A − μ·diag(D).
pub fn mode_matrix<T: Real>(spec: &RDSpec<T>, mu: T) -> Result<DenseMatrix<T>> {
    if !(mu >= T::zero() && mu.is_finite()) {
        return Err(Error::InvalidParameter(format!("mode eigenvalue {mu} must be nonnegative")));
    }
    let mut m = spec.a.clone();
    for (i, &d) in spec.diffusion.iter().enumerate() {
        m[(i, i)] -= d * mu;
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModeVerdict<T> {
    pub k: usize,
    pub mu: T,
    pub verdict: StabilityVerdict<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RdSpectrum<T> {
    pub modes: Vec<ModeVerdict<T>>,
    /// First index k with μ_k·min D > μ₂(A), the logarithmic 2-norm of A;
    /// every later mode is certified stable (Re λ ≤ μ₂(A) − μ_k min D < 0)
    /// without inspection.
    pub k0_bound: Option<usize>,
    pub overall: Status,
    /// Some mode was judged Stable on the sector test alone (complex
    /// eigenvalues with positive real part), not by Re λ < 0.
    pub relies_on_sector: bool,
}

impl<T: Real> RdSpectrum<T> {
    pub fn tail_certified(&self) -> bool {
        self.k0_bound.is_some()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "overall": self.overall.as_str(),
            "k0_bound": self.k0_bound,
            "relies_on_sector": self.relies_on_sector,
            "modes": self.modes.iter().map(|m| json!({
                "k": m.k,
                "mu": json_real(m.mu),
                "verdict": m.verdict.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Sector test on every mode matrix, evaluated in parallel.
///
/// The overall verdict is Unstable if some mode is, Stable if every mode up
/// to the tail bound is Stable and the bound is reached inside `mus`, and
/// Marginal otherwise.
pub fn rd_spectrum<T: Real>(spec: &RDSpec<T>, mus: &[T], tol: T) -> Result<RdSpectrum<T>> {
    if mus.iter().any(|&m| !(m >= T::zero())) {
        return Err(Error::InvalidParameter("mode eigenvalues must be nonnegative".into()));
    }
    if mus.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("mode eigenvalues must be nondecreasing".into()));
    }
    let min_d = spec.diffusion.iter().copied().fold(T::infinity(), T::min);
    let growth = spec.a.log_norm();
    let k0_bound = mus.iter().position(|&mu| mu * min_d - growth > T::zero());
    let modes: Vec<ModeVerdict<T>> = mus
        .par_iter()
        .enumerate()
        .map(|(k, &mu)| {
            let verdict = classify_matrix(spec.alpha, &mode_matrix(spec, mu)?, tol)?;
            Ok(ModeVerdict { k, mu, verdict })
        })
        .collect::<Result<_>>()?;
    let scanned = &modes[..k0_bound.map_or(modes.len(), |k| k + 1)];
    let overall = if modes.iter().any(|m| m.verdict.is_unstable()) {
        Status::Unstable
    } else if k0_bound.is_some() && scanned.iter().all(|m| m.verdict.is_stable()) {
        Status::Stable
    } else {
        Status::Marginal
    };
    let relies_on_sector =
        modes.iter().any(|m| m.verdict.is_stable() && m.verdict.eigenvalues.iter().any(|z| z.re >= T::zero()));
    Ok(RdSpectrum { modes, k0_bound, overall, relies_on_sector })
}
