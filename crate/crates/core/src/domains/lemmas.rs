//! Numerical checks of the two logarithm lemmas, and the constant `r_0`.

use std::f64::consts::{E, TAU};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use super::DomainError;
use crate::roots::bisect;
use crate::ComplexValue;

/// Half-width of the excluded band around the boundary of an iff-statement.
pub const BOUNDARY_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogLemmaCheck {
    /// `|log(1 + z)|`, principal branch.
    pub lhs: f64,
    /// `|z| >= e - 1`.
    pub predicted: bool,
    /// `lhs >= 1`.
    pub actual: bool,
}

impl LogLemmaCheck {
    pub fn agrees(&self) -> bool {
        self.predicted == self.actual
    }
}

/// Evaluates both sides of "`|log(1+z)| >= 1` iff `|z| >= e - 1`" at `z`.
///
/// Only the forward implication holds on all of the plane. Near `z = -1`
/// the logarithm is large while `|z| < e - 1`, so `agrees()` is false there.
pub fn log_lemma_check(z: ComplexValue) -> Result<LogLemmaCheck, DomainError> {
    let radius = z.norm();
    if (radius - (E - 1.0)).abs() < BOUNDARY_BAND {
        return Err(DomainError::BoundaryBand);
    }
    let lhs = (1.0 + z).ln().norm();
    Ok(LogLemmaCheck { lhs, predicted: radius >= E - 1.0, actual: lhs >= 1.0 })
}

/// Minimum of `|log((1+z)/(1-z))|` over `n` equally spaced points of `|z| = radius`.
pub fn mobius_log_min(radius: f64, n: usize) -> f64 {
    (0..n)
        .map(|k| {
            let z = Complex64::from_polar(radius, TAU * k as f64 / n as f64);
            ((1.0 + z) / (1.0 - z)).ln().norm()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Positive root of `r^2 + 2 cot(1) r - 1 = 0`, bracketed on `[0, 1]`.
///
/// Bisection to `tol`, then Newton steps that may not leave the final
/// bracket. The quadratic is increasing on `[0, 1]`, so Newton converges there.
pub fn solve_r0(tol: f64) -> f64 {
    let cot1 = 1.0_f64.tan().recip();
    let f = |r: f64| r * r + 2.0 * cot1 * r - 1.0;
    // f(0) = -1 and f(1) = 2 cot(1) > 0
    let mut r = bisect(f, 0.0, 1.0, tol).expect("sign change on [0, 1]");
    let (lo, hi) = (r - tol, r + tol);
    for _ in 0..4 {
        let next = r - f(r) / (2.0 * r + 2.0 * cot1);
        if !(lo..=hi).contains(&next) {
            break;
        }
        r = next;
    }
    r
}

/// `r_0` resolved to near machine precision, computed once.
pub fn r0() -> f64 {
    static R0: OnceLock<f64> = OnceLock::new();
    *R0.get_or_init(|| solve_r0(1e-15))
}
