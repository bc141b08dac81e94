//! Bracketing root finder.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error("f({lo}) and f({hi}) do not have opposite signs")]
    NotBracketed { lo: f64, hi: f64 },
    #[error("no convergence after {0} iterations")]
    MaxIterations(usize),
}

/// Bisection on `[lo, hi]` until the bracket is narrower than `tol`.
///
/// Returns the bracket midpoint. An exact zero at an endpoint or midpoint
/// ends the search early.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64, RootError>
where
    F: Fn(f64) -> f64,
{
    const MAX_ITER: usize = 200;

    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(RootError::NotBracketed { lo, hi });
    }
    for _ in 0..MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(RootError::MaxIterations(MAX_ITER))
}
