//! Admissibility boundary data for `q(z) = e^z`.
//!
//! On `zeta = e^{i theta}` the dominant gives `r = e^{zeta}`,
//! `s = m zeta e^{zeta}`, `Re(zeta q''/q') = cos theta` and
//! `Re(zeta^2 q'''/q') = cos 2 theta`. An operator `xi` is admissible for a
//! domain when `xi(r, s, t, u)` stays outside it for every `t`, `u` obeying
//! the real-part constraints below.

mod exclusion;
mod theorem;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ComplexValue;

pub use exclusion::{
    estimate_min_gap, find_threshold, verify_exclusion, ExclusionReport, ExclusionStatus, GridSpec, KRule,
    SampleRecord, ThresholdSearch, CERTIFICATE_TOL,
};
pub use theorem::{TheoremId, TheoremSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AdmissibilityError {
    #[error("second order needs m >= 1 (got m = {m})")]
    SecondOrderM { m: f64 },
    #[error("third order needs k >= m >= 2 (got m = {m}, k = {k})")]
    ThirdOrderMk { m: f64, k: f64 },
    #[error("operator coefficients need alpha1 > 0, alpha2 > 0, alpha3 >= 0")]
    Coefficients,
    #[error("slack values must be nonnegative")]
    NegativeSlack,
    #[error("operator is order {operator} but the point or theorem is order {other}")]
    OrderMismatch { operator: u8, other: u8 },
    #[error("theorem {0} needs Janowski parameters C and D")]
    MissingJanowski(String),
    #[error(transparent)]
    Domain(#[from] crate::domains::DomainError),
    #[error("threshold search: {0}")]
    Search(String),
}

/// `b = e^{cos theta} = |q'(zeta)|`, `l = cos theta`, `hq = cos 2 theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaseQuantities {
    pub theta: f64,
    pub b: f64,
    pub l: f64,
    pub hq: f64,
}

pub fn base_quantities(theta: f64) -> BaseQuantities {
    let theta = theta.rem_euclid(std::f64::consts::TAU);
    let l = theta.cos();
    BaseQuantities { theta, b: l.exp(), l, hq: (2.0 * theta).cos() }
}

/// `(alpha1, alpha2, alpha3)` of `1 + alpha1 zp' + alpha2 z^2 p'' + alpha3 z^3 p'''`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorCoefficients {
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
}

impl OperatorCoefficients {
    pub fn new(alpha1: f64, alpha2: f64, alpha3: f64) -> Result<Self, AdmissibilityError> {
        let finite = alpha1.is_finite() && alpha2.is_finite() && alpha3.is_finite();
        if !finite || alpha1 <= 0.0 || alpha2 <= 0.0 || alpha3 < 0.0 {
            return Err(AdmissibilityError::Coefficients);
        }
        Ok(Self { alpha1, alpha2, alpha3 })
    }

    pub fn second_order(alpha1: f64, alpha2: f64) -> Result<Self, AdmissibilityError> {
        Self::new(alpha1, alpha2, 0.0)
    }

    /// 2 when `alpha3 = 0`, else 3.
    pub fn order(&self) -> u8 {
        if self.alpha3 == 0.0 {
            2
        } else {
            3
        }
    }
}

/// Offsets of `t/s` and `u/s` from their constraint boundaries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Perturbation {
    pub t_slack: f64,
    pub t_imag: f64,
    pub u_slack: f64,
    pub u_imag: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibilityPoint {
    pub theta: f64,
    pub m: f64,
    pub k: f64,
    pub r: ComplexValue,
    pub s: ComplexValue,
    pub t: ComplexValue,
    /// Absent for second order.
    pub u: Option<ComplexValue>,
}

impl AdmissibilityPoint {
    pub fn order(&self) -> u8 {
        if self.u.is_some() {
            3
        } else {
            2
        }
    }
}

pub(crate) fn check_order(order: u8, m: f64, k: f64) -> Result<(), AdmissibilityError> {
    match order {
        2 if m >= 1.0 => Ok(()),
        2 => Err(AdmissibilityError::SecondOrderM { m }),
        _ if k >= m && m >= 2.0 => Ok(()),
        _ => Err(AdmissibilityError::ThirdOrderMk { m, k }),
    }
}

/// Lower bound on `Re(u/s)`: `m^2 hq + 3m(k-1) l`.
fn u_floor(base: &BaseQuantities, m: f64, k: f64) -> f64 {
    m * m * base.hq + 3.0 * m * (k - 1.0) * base.l
}

/// Builds `(r, s, t, u)` at `zeta = e^{i theta}`.
///
/// `t = s (m(1 + l) - 1 + t_slack + i t_imag)` and
/// `u = s (m^2 hq + 3m(k-1) l + u_slack + i u_imag)`; zero perturbation gives
/// the point on the constraint boundary.
pub fn make_point(
    theta: f64,
    m: f64,
    k: f64,
    perturbation: Perturbation,
    order: u8,
) -> Result<AdmissibilityPoint, AdmissibilityError> {
    check_order(order, m, k)?;
    if perturbation.t_slack < 0.0 || perturbation.u_slack < 0.0 {
        return Err(AdmissibilityError::NegativeSlack);
    }
    let base = base_quantities(theta);
    let zeta = Complex64::from_polar(1.0, base.theta);
    let r = zeta.exp();
    let s = m * zeta * r;
    let t_ratio = Complex64::new(m * (1.0 + base.l) - 1.0 + perturbation.t_slack, perturbation.t_imag);
    let u = (order == 3).then(|| s * Complex64::new(u_floor(&base, m, k) + perturbation.u_slack, perturbation.u_imag));
    Ok(AdmissibilityPoint { theta: base.theta, m, k, r, s, t: s * t_ratio, u })
}

/// `alpha1 s + alpha2 t + alpha3 u`.
pub fn operator_part(c: &OperatorCoefficients, pt: &AdmissibilityPoint) -> Result<ComplexValue, AdmissibilityError> {
    match (c.order(), pt.u) {
        (2, None) => Ok(c.alpha1 * pt.s + c.alpha2 * pt.t),
        (3, Some(u)) => Ok(c.alpha1 * pt.s + c.alpha2 * pt.t + c.alpha3 * u),
        (operator, _) => Err(AdmissibilityError::OrderMismatch { operator, other: pt.order() }),
    }
}

/// `xi(r, s, t, u) = 1 + alpha1 s + alpha2 t + alpha3 u`.
pub fn xi_value(c: &OperatorCoefficients, pt: &AdmissibilityPoint) -> Result<ComplexValue, AdmissibilityError> {
    Ok(1.0 + operator_part(c, pt)?)
}

/// `m alpha1 b (1 + (alpha2/alpha1)(m l + m - 1) + (alpha3/alpha1)(m^2 hq + 3m(k-1) l))`,
/// the lower bound on `|alpha1 s + alpha2 t + alpha3 u|` before relaxing
/// `m >= 1` and `b >= 1/e`.
pub fn proof_lower_bound(c: &OperatorCoefficients, theta: f64, m: f64, k: f64) -> Result<f64, AdmissibilityError> {
    check_order(c.order(), m, k)?;
    let base = base_quantities(theta);
    let second = (c.alpha2 / c.alpha1) * (m * base.l + m - 1.0);
    let third = if c.order() == 3 { (c.alpha3 / c.alpha1) * u_floor(&base, m, k) } else { 0.0 };
    Ok(m * c.alpha1 * base.b * (1.0 + second + third))
}
