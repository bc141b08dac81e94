//! Subordination by image containment, the implication falsifier and the
//! `Y_f` / `chi_f` corollary operators.
//!
//! Every target `h` here is univalent, so `p < h` is tested as `p(0) = h(0)`
//! plus `p(rho D) in h(D)` on a few nested circles.

mod corollary;
mod falsify;

use thiserror::Error;

use crate::admissibility::OperatorCoefficients;
use crate::domains::TargetDomain;
use crate::series::{circle_point, SeriesError, TaylorSeries};
use crate::ComplexValue;

pub use corollary::{
    chi_f_direct, chi_f_printed, chi_f_report, classify_starlike_exp, starlike_quantities, y_f, y_f_printed,
    ChiDiscrepancy, StarlikeQuantities, IDENTITY_TOL,
};
pub use falsify::{falsify_implication, falsify_with, random_trial_series, FalsifyOptions, ImplicationReport};

/// Default outermost circle.
pub const DEFAULT_RHO_MAX: f64 = 0.995;
/// Default number of samples per circle.
pub const DEFAULT_CIRCLE_SAMPLES: usize = 256;
/// Allowed distance between `p(0)` and `h(0)`.
pub const CENTER_TOL: f64 = 1e-9;

const INNER_RADII: [f64; 2] = [0.5, 0.9];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SubordinationError {
    #[error("p(0) = {found} but h(0) = {expected}")]
    CenterMismatch { expected: ComplexValue, found: ComplexValue },
    #[error("outer radius {0} is outside [0.9, 0.999]")]
    RadiusOutOfRange(f64),
    #[error("{0} samples per circle, need at least 256")]
    TooFewSamples(usize),
    #[error("function is not normalized as z + a_2 z^2 + ...")]
    NotClassA,
    #[error("Y_f takes second-order coefficients")]
    NotSecondOrder,
    #[error("printed Y_f differs from the direct operator by {0:e}")]
    IdentityMismatch(f64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// The radii `0.5, 0.9, rho_max`.
pub fn test_radii(rho_max: f64) -> [f64; 3] {
    [INNER_RADII[0], INNER_RADII[1], rho_max]
}

fn check_inputs(p: &TaylorSeries, d: &TargetDomain, rho_max: f64, n: usize) -> Result<(), SubordinationError> {
    if !(0.9..=0.999).contains(&rho_max) {
        return Err(SubordinationError::RadiusOutOfRange(rho_max));
    }
    if n < DEFAULT_CIRCLE_SAMPLES {
        return Err(SubordinationError::TooFewSamples(n));
    }
    let expected = d.value_at_origin();
    let found = p.constant_term();
    if (found - expected).norm() > CENTER_TOL {
        return Err(SubordinationError::CenterMismatch { expected, found });
    }
    Ok(())
}

/// `p < h` tested on `n` points of each circle `0.5, 0.9, rho_max`.
pub fn is_subordinate(p: &TaylorSeries, d: &TargetDomain, rho_max: f64, n: usize) -> Result<bool, SubordinationError> {
    check_inputs(p, d, rho_max, n)?;
    Ok(test_radii(rho_max).iter().all(|&rho| (0..n).all(|k| d.contains(p.evaluate(circle_point(rho, k, n))))))
}

/// Containment result for each circle separately, innermost first.
pub fn containment_profile(
    p: &TaylorSeries,
    d: &TargetDomain,
    radii: &[f64],
    n: usize,
) -> Result<Vec<bool>, SubordinationError> {
    check_inputs(p, d, DEFAULT_RHO_MAX, n)?;
    Ok(radii.iter().map(|&rho| (0..n).all(|k| d.contains(p.evaluate(circle_point(rho, k, n))))).collect())
}

/// `1 + alpha1 z p' + alpha2 z^2 p'' + alpha3 z^3 p'''`.
pub fn lhs_operator(p: &TaylorSeries, c: &OperatorCoefficients) -> TaylorSeries {
    let mut out = &p.z_pow_derivative(1).scale_real(c.alpha1) + &p.z_pow_derivative(2).scale_real(c.alpha2);
    if c.alpha3 != 0.0 {
        out = &out + &p.z_pow_derivative(3).scale_real(c.alpha3);
    }
    &out + &TaylorSeries::constant(ComplexValue::new(1.0, 0.0), p.order())
}

/// `e * max |z p'(z)| <= m` over 1024 points of `|z| = 0.999`.
///
/// `|e^zeta| <= e` on the closed disk, so this bounds `|z p'(z) e^zeta|` from above.
pub fn third_order_side_condition(p: &TaylorSeries, m: f64) -> bool {
    let zp = p.z_derivative();
    let sup = zp.eval_on_circle(0.999, 1024).iter().map(|w| w.norm()).fold(0.0, f64::max);
    std::f64::consts::E * sup <= m
}
