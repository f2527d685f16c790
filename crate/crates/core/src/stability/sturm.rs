use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest eigenvalue of u'' + q(x)u on [0, L] with Neumann conditions.
///
/// Second-order central differences on N + 1 nodes x_i = iL/N with ghost
/// points u_{−1} = u_1, u_{N+1} = u_{N−1}. The resulting tridiagonal matrix is
/// similar to a symmetric one; its top eigenvalue is located by Sturm-sequence
/// bisection.
pub fn sturm_liouville_max_eig<T: Real, Q: Fn(T) -> T>(q: Q, length: T, n: usize) -> Result<T> {
    if n < 16 {
        return Err(Error::InvalidParameter(format!("need N >= 16 intervals, got {n}")));
    }
    if !(length > T::zero() && length.is_finite()) {
        return Err(Error::InvalidParameter(format!("interval length {length} must be positive")));
    }
    let h = length / T::from_usize(n);
    // Work with h²·M to keep entries O(1).
    let h2 = h * h;
    let diag: Vec<T> = (0..=n)
        .map(|i| {
            let qi = q(T::from_usize(i) * h);
            T::lit(-2.0) + h2 * qi
        })
        .collect();
    if diag.iter().any(|d| !d.is_finite()) {
        return Err(Error::Domain("potential q is not finite on the grid".into()));
    }
    // Products of opposite off-diagonal entries: 2 at the Neumann rows, 1 inside.
    let offsq: Vec<T> = (0..n).map(|i| if i == 0 || i == n - 1 { T::lit(2.0) } else { T::one() }).collect();
    Ok(tridiagonal_max_eigenvalue(&diag, &offsq) / h2)
}

/// Number of eigenvalues strictly below `x` of the symmetric tridiagonal
/// matrix with diagonal `diag` and squared off-diagonal `offsq`.
fn count_below<T: Real>(diag: &[T], offsq: &[T], x: T) -> usize {
    let tiny = T::min_positive_value().sqrt();
    let mut count = 0;
    let mut d = diag[0] - x;
    for i in 0..diag.len() {
        if i > 0 {
            d = diag[i] - x - offsq[i - 1] / d;
        }
        if d == T::zero() {
            d = -tiny;
        }
        if d < T::zero() {
            count += 1;
        }
    }
    count
}

pub(crate) fn tridiagonal_max_eigenvalue<T: Real>(diag: &[T], offsq: &[T]) -> T {
    let n = diag.len();
    let off: Vec<T> = offsq.iter().map(|v| v.sqrt()).collect();
    let radius = |i: usize| {
        let left = if i > 0 { off[i - 1] } else { T::zero() };
        let right = if i + 1 < n { off[i] } else { T::zero() };
        left + right
    };
    let mut lo = (0..n).map(|i| diag[i] - radius(i)).fold(T::infinity(), T::min);
    let mut hi = (0..n).map(|i| diag[i] + radius(i)).fold(T::neg_infinity(), T::max);
    let scale = lo.abs().max(hi.abs()).max(T::one());
    while hi - lo > T::lit(2.0) * T::epsilon() * scale {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(diag, offsq, mid) == n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) * T::lit(0.5)
}
