use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::json_real;
use crate::linalg::{eigenvalues, DenseMatrix};
use crate::scalar::{principal_arg, Real, C};

/// Default angular tolerance (radians) of the sector test.
pub const DEFAULT_ANGULAR_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Stable,
    Unstable,
    Marginal,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Stable => "stable",
            Status::Unstable => "unstable",
            Status::Marginal => "marginal",
        }
    }
}

/// Outcome of the sector test |arg λ| > απ/2 over a set of eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityVerdict<T> {
    pub status: Status,
    /// Unstable eigenvalue of largest real part, if any.
    pub witness: Option<C<T>>,
    /// min over eigenvalues of |arg λ| − απ/2.
    pub sector_margin: T,
    pub eigenvalues: Vec<C<T>>,
}

impl<T: Real> StabilityVerdict<T> {
    pub fn is_stable(&self) -> bool {
        self.status == Status::Stable
    }

    pub fn is_unstable(&self) -> bool {
        self.status == Status::Unstable
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status.as_str(),
            "witness": self.witness.map(|w| json!({"re": json_real(w.re), "im": json_real(w.im)})),
            "sector_margin": json_real(self.sector_margin),
            "eigenvalues": self.eigenvalues.iter().map(|z| json!({"re": json_real(z.re), "im": json_real(z.im)})).collect::<Vec<_>>(),
        })
    }
}

fn check<T: Real>(alpha: T, tol: T) -> Result<()> {
    if !(alpha > T::zero() && alpha <= T::one()) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1]")));
    }
    if !(tol > T::zero()) {
        return Err(Error::InvalidParameter("angular tolerance must be positive".into()));
    }
    Ok(())
}

/// Sector test folded over `eigs`. λ = 0 is never stable.
pub fn classify_eigenvalues<T: Real>(alpha: T, eigs: &[C<T>], tol: T) -> Result<StabilityVerdict<T>> {
    check(alpha, tol)?;
    let half = alpha * T::FRAC_PI_2();
    let mut margin = T::infinity();
    let mut has_zero = false;
    let mut witness: Option<C<T>> = None;
    for &z in eigs {
        if z.re == T::zero() && z.im == T::zero() {
            has_zero = true;
            margin = margin.min(-half);
            continue;
        }
        let m = principal_arg(z).abs() - half;
        margin = margin.min(m);
        if m < -tol && witness.is_none_or(|w| z.re > w.re) {
            witness = Some(z);
        }
    }
    let status = if witness.is_some() {
        Status::Unstable
    } else if !has_zero && margin > tol {
        Status::Stable
    } else {
        Status::Marginal
    };
    Ok(StabilityVerdict { status, witness, sector_margin: margin, eigenvalues: eigs.to_vec() })
}

/// Stable iff |arg λ| > απ/2 + tol, Unstable iff λ ≠ 0 and |arg λ| < απ/2 − tol.
pub fn classify_scalar<T: Real>(alpha: T, lambda: C<T>, tol: T) -> Result<StabilityVerdict<T>> {
    classify_eigenvalues(alpha, &[lambda], tol)
}

/// Sector test on the spectrum of `a`.
pub fn classify_matrix<T: Real>(alpha: T, a: &DenseMatrix<T>, tol: T) -> Result<StabilityVerdict<T>> {
    check(alpha, tol)?;
    classify_eigenvalues(alpha, &eigenvalues(a)?, tol)
}
