//! Resolvent families S_α(t) = E_α(t^α A) and P_α(t) = E_{α,α}(t^α A).
//!
//! Diagonalizable generators go through the eigendecomposition; defective or
//! ill-conditioned ones through subordination to the matrix exponential,
//!
//! S_α(t) = ∫₀^∞ Ψ_α(s) e^{s t^α A} ds,  P_α(t) = ∫₀^∞ αs Ψ_α(s) e^{s t^α A} ds.

use crate::error::{Error, Result};
use crate::linalg::{eig, expm, DenseMatrix, Spectrum};
use crate::quad::{integrate_vec, QuadOptions};
use crate::scalar::{Real, C};
use crate::specfun::{ml, wright_psi, MlParams, WrightParams};

/// Which family member to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolventKind {
    S,
    P,
}

// Truncation level for the subordination tail, relative to the bound on the integrand.
const TAIL: f64 = 1e-16;

/// Subordination quadrature; valid for any real square `a`, including
/// defective matrices.
pub fn resolvent_via_subordination<T: Real>(
    a: &DenseMatrix<T>,
    alpha: T,
    t: T,
    which: ResolventKind,
) -> Result<DenseMatrix<T>> {
    if !(t > T::zero() && t.is_finite()) {
        return Err(Error::Domain(format!("subordination needs t > 0, got {t}")));
    }
    let n = a.dim();
    if alpha == T::one() {
        return expm(a, t);
    }
    let wp = WrightParams::with_alpha(alpha)?;
    let ta = t.powf(alpha);
    let omega = a.log_norm();
    let weight = |s: T| match which {
        ResolventKind::S => T::one(),
        ResolventKind::P => alpha * s,
    };
    // ‖e^{τA}‖₂ ≤ e^{ωτ}; march until the integrand bound is negligible.
    let mut s_max = T::lit(2.0);
    loop {
        let psi = wright_psi(wp, s_max)?;
        let log_bound = psi.ln() + (omega * s_max * ta) + weight(s_max).max(T::one()).ln();
        if psi == T::zero() || log_bound < T::lit(TAIL).ln() {
            break;
        }
        s_max *= T::lit(1.5);
        if s_max > T::lit(1e6) {
            return Err(Error::Overflow(format!(
                "subordination integrand not integrable in range (omega·t^alpha = {})",
                omega * ta
            )));
        }
    }
    let mut integrand = |s: T, out: &mut [T]| {
        let psi = wright_psi(wp, s).unwrap_or(T::nan()) * weight(s);
        match expm(a, s * ta) {
            Ok(e) => {
                for (o, &v) in out.iter_mut().zip(e.as_slice()) {
                    *o = psi * v;
                }
            }
            Err(_) => out.iter_mut().for_each(|o| *o = T::nan()),
        }
    };
    let opts = QuadOptions { abs_tol: T::lit(1e-14), rel_tol: T::lit(1e-12), max_panels: 4000 };
    let mut total = vec![T::zero(); n * n];
    // Split at the series/integral switch of Ψ_α and at the decay scale of e^{sτA}.
    let mut cuts = vec![T::zero()];
    let scale = T::one() / (a.norm_1() * ta).max(T::epsilon());
    if scale < T::one() {
        cuts.push(scale);
    }
    cuts.push(T::one());
    cuts.push(s_max);
    for w in cuts.windows(2) {
        let r = integrate_vec(&mut integrand, w[0], w[1], n * n, opts).map_err(|e| match e {
            Error::QuadratureFailure(msg) if msg.contains("non-finite") => {
                Error::Overflow("subordination integrand overflowed".into())
            }
            other => other,
        })?;
        for (acc, v) in total.iter_mut().zip(r.value) {
            *acc += v;
        }
    }
    DenseMatrix::new(n, total)
}

/// Both resolvent families of one generator, sharing a single
/// eigendecomposition across evaluations.
#[derive(Clone)]
pub struct ResolventFamily<T> {
    a: DenseMatrix<T>,
    alpha: T,
    spectrum: Option<Spectrum<T>>,
}

impl<T: Real> std::fmt::Debug for ResolventFamily<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ResolventFamily")
            .field("a", &self.a)
            .field("alpha", &self.alpha)
            .field("spectral", &self.is_spectral())
            .finish()
    }
}

impl<T: Real> ResolventFamily<T> {
    pub fn new(a: &DenseMatrix<T>, alpha: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha <= T::one()) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must lie in (0, 1]")));
        }
        if !a.is_finite() {
            return Err(Error::InvalidParameter("generator has non-finite entries".into()));
        }
        let spectrum = match eig(a) {
            Ok(s) if s.is_diagonalizable() => Some(s),
            Ok(_) | Err(Error::NoConvergence { .. }) => None,
            Err(e) => return Err(e),
        };
        Ok(Self { a: a.clone(), alpha, spectrum })
    }

    pub fn generator(&self) -> &DenseMatrix<T> {
        &self.a
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// True when evaluations go through the eigendecomposition.
    pub fn is_spectral(&self) -> bool {
        self.spectrum.is_some()
    }

    pub fn spectrum(&self) -> Option<&Spectrum<T>> {
        self.spectrum.as_ref()
    }

    fn spectral(&self, beta: T, t: T) -> Result<Option<DenseMatrix<T>>> {
        let Some(spec) = &self.spectrum else { return Ok(None) };
        let params = MlParams::new(self.alpha, beta)?;
        let ta = t.powf(self.alpha);
        let m = spec.apply(|lambda: C<T>| {
            let v = ml(params, lambda * ta)?.value;
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(Error::Overflow(format!("E_(alpha,beta)(t^alpha lambda) overflows at t = {t}")))
            }
        })?;
        if !m.is_finite() {
            return Err(Error::Overflow(format!("resolvent overflows at t = {t}")));
        }
        Ok(Some(m))
    }

    /// S_α(t); S_α(0) = I exactly.
    pub fn s(&self, t: T) -> Result<DenseMatrix<T>> {
        if !(t >= T::zero() && t.is_finite()) {
            return Err(Error::Domain(format!("S_alpha(t) needs t >= 0, got {t}")));
        }
        if t == T::zero() {
            return Ok(DenseMatrix::identity(self.a.dim()));
        }
        if self.alpha == T::one() {
            return expm(&self.a, t);
        }
        match self.spectral(T::one(), t)? {
            Some(m) => Ok(m),
            None => resolvent_via_subordination(&self.a, self.alpha, t, ResolventKind::S),
        }
    }

    /// P_α(t), t > 0.
    pub fn p(&self, t: T) -> Result<DenseMatrix<T>> {
        if !(t > T::zero() && t.is_finite()) {
            return Err(Error::Domain(format!("P_alpha(t) needs t > 0, got {t}")));
        }
        if self.alpha == T::one() {
            return expm(&self.a, t);
        }
        match self.spectral(self.alpha, t)? {
            Some(m) => Ok(m),
            None => resolvent_via_subordination(&self.a, self.alpha, t, ResolventKind::P),
        }
    }

    /// Moments of the matrix kernel K(σ) = σ^{α−1}P_α(σ):
    /// (∫₀^τ K, ∫₀^τ σK(σ) dσ).
    pub fn kernel_moments(&self, tau: T) -> Result<(DenseMatrix<T>, DenseMatrix<T>)> {
        let n = self.a.dim();
        if tau == T::zero() {
            return Ok((DenseMatrix::zeros(n), DenseMatrix::zeros(n)));
        }
        let alpha = self.alpha;
        let ta = tau.powf(alpha);
        if self.spectrum.is_some() {
            let e1 = self.spectral(alpha + T::one(), tau)?.expect("spectral");
            let e2 = self.spectral(alpha + T::lit(2.0), tau)?.expect("spectral");
            return Ok((e1.scale(ta), e1.add_scaled(-T::one(), &e2).scale(ta * tau)));
        }
        // σ = τ w^{1/α} turns σ^{α−1}dσ into (τ^α/α) dw.
        let mut failure = None;
        let r = integrate_vec(
            |w: T, out: &mut [T]| {
                if w == T::zero() {
                    let p0 = if alpha == T::one() { T::one() } else { crate::specfun::rgamma(alpha) };
                    for i in 0..n {
                        for j in 0..n {
                            out[i * n + j] = if i == j { p0 } else { T::zero() };
                            out[n * n + i * n + j] = T::zero();
                        }
                    }
                    return;
                }
                let sigma = tau * w.powf(alpha.recip());
                match self.p(sigma) {
                    Ok(p) => {
                        for (k, &v) in p.as_slice().iter().enumerate() {
                            out[k] = v;
                            out[n * n + k] = v * sigma;
                        }
                    }
                    Err(e) => {
                        failure.get_or_insert(e);
                        out.iter_mut().for_each(|o| *o = T::nan());
                    }
                }
            },
            T::zero(),
            T::one(),
            2 * n * n,
            QuadOptions { abs_tol: T::lit(1e-13), rel_tol: T::lit(1e-10), max_panels: 400 },
        );
        if let Some(e) = failure {
            return Err(e);
        }
        let v = r?.value;
        let c = ta / alpha;
        Ok((DenseMatrix::new(n, v[..n * n].to_vec())?.scale(c), DenseMatrix::new(n, v[n * n..].to_vec())?.scale(c)))
    }
}

/// S_α(t) = E_α(t^α A).
pub fn resolvent_s<T: Real>(a: &DenseMatrix<T>, alpha: T, t: T) -> Result<DenseMatrix<T>> {
    ResolventFamily::new(a, alpha)?.s(t)
}

/// P_α(t) = E_{α,α}(t^α A); t = 0 is outside the domain.
pub fn resolvent_p<T: Real>(a: &DenseMatrix<T>, alpha: T, t: T) -> Result<DenseMatrix<T>> {
    if t == T::zero() {
        return Err(Error::Domain("P_alpha is singular at t = 0".into()));
    }
    ResolventFamily::new(a, alpha)?.p(t)
}
