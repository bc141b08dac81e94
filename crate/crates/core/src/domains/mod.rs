//! The eight target domains `Omega = h(D)` and their geometry.
//!
//! Every domain carries a closed-form boundary map `theta -> h(e^{i theta})`,
//! a strict membership predicate, the point its exclusion argument measures
//! distances from, and the constant that argument needs.

mod lemmas;
mod winding;

use std::f64::consts::{E, FRAC_PI_2, PI, SQRT_2, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ComplexValue;

pub use lemmas::{log_lemma_check, mobius_log_min, r0, solve_r0, LogLemmaCheck, BOUNDARY_BAND};
pub use winding::{argument_change, winding_membership, Polyline, MIN_BOUNDARY_SAMPLES, PROXIMITY_GUARD};

/// Points this close to the boundary are reported as outside.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Samples of the cardioid polyline used to cross-check membership.
pub const CARDIOID_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("Janowski parameters must satisfy -1 < D < C <= 1 (got C = {c}, D = {d})")]
    JanowskiParameters { c: f64, d: f64 },
    #[error("theta = {0} maps onto a branch point of h")]
    BranchCut(f64),
    #[error("probe point lies within the proximity guard of a boundary sample")]
    TooCloseToBoundary,
    #[error("at least {MIN_BOUNDARY_SAMPLES} boundary samples are required, got {0}")]
    TooFewSamples(usize),
    #[error("|z| lies in the excluded band around e - 1")]
    BoundaryBand,
    #[error("unknown domain id {0:?}")]
    UnknownDomain(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "lowercase")]
pub enum DomainKind {
    /// `(1 + Cz) / (1 + Dz)`
    Janowski {
        #[serde(rename = "C")]
        c: f64,
        #[serde(rename = "D")]
        d: f64,
    },
    /// `sqrt(1 + z)`
    Sqrt1pz,
    /// `2 / (1 + e^{-z})`
    Sigmoid,
    /// `z + sqrt(1 + z^2)`
    Crescent,
    /// `1 + sin z`
    Sine,
    /// `1 + z e^z`
    Cardioid,
    /// `1 + asinh z`
    Arcsinh,
    /// `e^z`
    Exp,
}

/// Which set `contains` tests.
///
/// The closed-form predicates for `sqrt1pz`, `crescent` and `arcsinh` describe
/// sets larger than `h(D)`: two lemniscate lobes, two mirrored crescents, and
/// infinitely many `i pi` translates respectively. `Image` intersects the
/// predicate with the half-plane or strip that isolates `h(D)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Literal,
    Image,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TargetDomain {
    #[serde(flatten)]
    kind: DomainKind,
    membership: Membership,
}

impl TargetDomain {
    pub fn janowski(c: f64, d: f64) -> Result<Self, DomainError> {
        if !(-1.0 < d && d < c && c <= 1.0) {
            return Err(DomainError::JanowskiParameters { c, d });
        }
        Ok(Self { kind: DomainKind::Janowski { c, d }, membership: Membership::Literal })
    }

    pub fn sqrt1pz() -> Self {
        Self { kind: DomainKind::Sqrt1pz, membership: Membership::Literal }
    }

    pub fn sigmoid() -> Self {
        Self { kind: DomainKind::Sigmoid, membership: Membership::Literal }
    }

    pub fn crescent() -> Self {
        Self { kind: DomainKind::Crescent, membership: Membership::Image }
    }

    pub fn sine() -> Self {
        Self { kind: DomainKind::Sine, membership: Membership::Literal }
    }

    pub fn cardioid() -> Self {
        Self { kind: DomainKind::Cardioid, membership: Membership::Image }
    }

    pub fn arcsinh() -> Self {
        Self { kind: DomainKind::Arcsinh, membership: Membership::Image }
    }

    pub fn exp() -> Self {
        Self { kind: DomainKind::Exp, membership: Membership::Literal }
    }

    /// Looks a domain up by its id. Janowski needs `(C, D)`.
    pub fn from_id(id: &str, janowski: Option<(f64, f64)>) -> Result<Self, DomainError> {
        match id {
            "janowski" => {
                let (c, d) = janowski.ok_or_else(|| DomainError::UnknownDomain("janowski without C, D".into()))?;
                Self::janowski(c, d)
            }
            "sqrt1pz" => Ok(Self::sqrt1pz()),
            "sigmoid" => Ok(Self::sigmoid()),
            "crescent" => Ok(Self::crescent()),
            "sine" => Ok(Self::sine()),
            "cardioid" => Ok(Self::cardioid()),
            "arcsinh" => Ok(Self::arcsinh()),
            "exp" => Ok(Self::exp()),
            other => Err(DomainError::UnknownDomain(other.to_string())),
        }
    }

    pub fn with_membership(mut self, membership: Membership) -> Self {
        self.membership = membership;
        self
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn membership(&self) -> Membership {
        self.membership
    }

    pub fn id(&self) -> &'static str {
        match self.kind {
            DomainKind::Janowski { .. } => "janowski",
            DomainKind::Sqrt1pz => "sqrt1pz",
            DomainKind::Sigmoid => "sigmoid",
            DomainKind::Crescent => "crescent",
            DomainKind::Sine => "sine",
            DomainKind::Cardioid => "cardioid",
            DomainKind::Arcsinh => "arcsinh",
            DomainKind::Exp => "exp",
        }
    }

    /// `h(0)`; equal to 1 for every domain in the catalog.
    pub fn value_at_origin(&self) -> ComplexValue {
        Complex64::new(1.0, 0.0)
    }

    /// Point the exclusion argument measures from: the disk center for
    /// Janowski, 1 otherwise.
    pub fn center(&self) -> ComplexValue {
        match self.kind {
            DomainKind::Janowski { c, d } => Complex64::new((1.0 - c * d) / (1.0 - d * d), 0.0),
            _ => Complex64::new(1.0, 0.0),
        }
    }

    /// Lower bound required of `|alpha_1 s + alpha_2 t + alpha_3 u|`, or of
    /// `|xi^2 - 1|` for `sqrt1pz`.
    pub fn proof_constant(&self) -> f64 {
        match self.kind {
            DomainKind::Janowski { c, d } => (c - d) * (1.0 + d.abs()) / (1.0 - d * d),
            DomainKind::Sqrt1pz => 1.0,
            DomainKind::Sigmoid => r0(),
            DomainKind::Crescent => SQRT_2,
            DomainKind::Sine => 1.0_f64.sinh(),
            DomainKind::Cardioid => E,
            DomainKind::Arcsinh => FRAC_PI_2,
            DomainKind::Exp => E - 1.0,
        }
    }

    /// Slack of the reduced inequality for `xi = 1 + x`; nonnegative means
    /// the exclusion argument goes through.
    pub fn reduced_margin(&self, x: ComplexValue) -> f64 {
        match self.kind {
            DomainKind::Sqrt1pz => ((1.0 + x) * (1.0 + x) - 1.0).norm() - 1.0,
            _ => x.norm() - self.proof_constant(),
        }
    }

    /// `h(e^{i theta})` on principal branches.
    pub fn boundary_point(&self, theta: f64) -> Result<ComplexValue, DomainError> {
        let z = Complex64::from_polar(1.0, theta.rem_euclid(TAU));
        Ok(match self.kind {
            DomainKind::Janowski { c, d } => (1.0 + c * z) / (1.0 + d * z),
            DomainKind::Sqrt1pz => {
                if (1.0 + z).norm() < BOUNDARY_TOL {
                    return Err(DomainError::BranchCut(theta));
                }
                (1.0 + z).sqrt()
            }
            DomainKind::Sigmoid => 2.0 / (1.0 + (-z).exp()),
            DomainKind::Crescent => z + (1.0 + z * z).sqrt(),
            DomainKind::Sine => 1.0 + z.sin(),
            DomainKind::Cardioid => 1.0 + z * z.exp(),
            DomainKind::Arcsinh => 1.0 + z.asinh(),
            DomainKind::Exp => z.exp(),
        })
    }

    /// `n` boundary samples at `theta_k = 2 pi k / n`, skipping branch points.
    pub fn sample_boundary(&self, n: usize) -> Vec<(f64, ComplexValue)> {
        (0..n)
            .filter_map(|k| {
                let theta = TAU * k as f64 / n as f64;
                self.boundary_point(theta).ok().map(|w| (theta, w))
            })
            .collect()
    }

    /// Strict interior membership; points within [`BOUNDARY_TOL`] of the
    /// boundary are outside.
    pub fn contains(&self, w: ComplexValue) -> bool {
        if !w.is_finite() {
            return false;
        }
        let image = self.membership == Membership::Image;
        let one = Complex64::new(1.0, 0.0);
        match self.kind {
            DomainKind::Janowski { c, d } => {
                let radius = (c - d) / (1.0 - d * d);
                (w - self.center()).norm() < radius - BOUNDARY_TOL
            }
            DomainKind::Sqrt1pz => (w * w - one).norm() < 1.0 - BOUNDARY_TOL && (!image || w.re > 0.0),
            DomainKind::Sigmoid => {
                let denom = 2.0 - w;
                if denom.norm() == 0.0 || w.norm() == 0.0 {
                    return false;
                }
                (w / denom).ln().norm() < 1.0 - BOUNDARY_TOL
            }
            DomainKind::Crescent => (w * w - one).norm() < 2.0 * w.norm() - BOUNDARY_TOL && (!image || w.re > 0.0),
            DomainKind::Sine => {
                let v = (w - one).asin();
                v.norm() < 1.0 - BOUNDARY_TOL && v.re.abs() <= FRAC_PI_2
            }
            DomainKind::Cardioid => cardioid_contains(w),
            DomainKind::Arcsinh => {
                let v = w - one;
                v.sinh().norm() < 1.0 - BOUNDARY_TOL && (!image || v.im.abs() < FRAC_PI_2)
            }
            DomainKind::Exp => {
                if w.norm() == 0.0 {
                    return false;
                }
                w.ln().norm() < 1.0 - BOUNDARY_TOL
            }
        }
    }
}

impl fmt::Display for TargetDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DomainKind::Janowski { c, d } => write!(f, "janowski(C={c}, D={d})"),
            _ => f.write_str(self.id()),
        }
    }
}

/// `h(e^{i theta}) - 1` has argument `theta + sin theta`, increasing on
/// `[-pi, pi]`, so the image is star-shaped about 1. Find the boundary point
/// on the ray through `w` and compare radii. The radius is not Lipschitz in
/// the angle at the cusp `1 - 1/e`, so a small disk around it counts as outside.
fn cardioid_contains(w: ComplexValue) -> bool {
    let v = w - 1.0;
    let r = v.norm();
    if (v + E.recip()).norm() < PROXIMITY_GUARD {
        return false;
    }
    if r < E.recip() - BOUNDARY_TOL {
        return true;
    }
    if r >= E {
        return false;
    }
    let phi = v.arg();
    let (mut lo, mut hi) = (-PI, PI);
    for _ in 0..64 {
        let mid = 0.5 * (lo + hi);
        if mid + mid.sin() < phi {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    r < (0.5 * (lo + hi)).cos().exp() - BOUNDARY_TOL
}

/// Largest `|h(e^{i theta}) - 1|` over `n` equally spaced samples.
pub fn enclosing_radius(domain: &TargetDomain, n: usize) -> f64 {
    domain.sample_boundary(n).into_iter().map(|(_, w)| (w - 1.0).norm()).fold(0.0, f64::max)
}
