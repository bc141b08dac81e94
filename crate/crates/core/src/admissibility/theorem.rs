//! The sixteen implications `1 + alpha1 zp' + alpha2 z^2 p'' (+ alpha3 z^3 p''') < h  =>  p < e^z`
//! and their sufficient conditions on the coefficients.

use std::f64::consts::{E, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{check_order, AdmissibilityError, OperatorCoefficients};
use crate::domains::{r0, DomainKind, TargetDomain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "T4.1")]
    T4_1,
    #[serde(rename = "T4.2")]
    T4_2,
    #[serde(rename = "T4.3")]
    T4_3,
    #[serde(rename = "T4.4")]
    T4_4,
    #[serde(rename = "T4.5")]
    T4_5,
    #[serde(rename = "T4.6")]
    T4_6,
    #[serde(rename = "T4.7")]
    T4_7,
    #[serde(rename = "T4.8")]
    T4_8,
    #[serde(rename = "T5.1")]
    T5_1,
    #[serde(rename = "T5.2")]
    T5_2,
    #[serde(rename = "T5.3")]
    T5_3,
    #[serde(rename = "T5.4")]
    T5_4,
    #[serde(rename = "T5.5")]
    T5_5,
    #[serde(rename = "T5.6")]
    T5_6,
    #[serde(rename = "T5.7")]
    T5_7,
    #[serde(rename = "T5.8")]
    T5_8,
}

impl TheoremId {
    pub const ALL: [TheoremId; 16] = [
        TheoremId::T4_1,
        TheoremId::T4_2,
        TheoremId::T4_3,
        TheoremId::T4_4,
        TheoremId::T4_5,
        TheoremId::T4_6,
        TheoremId::T4_7,
        TheoremId::T4_8,
        TheoremId::T5_1,
        TheoremId::T5_2,
        TheoremId::T5_3,
        TheoremId::T5_4,
        TheoremId::T5_5,
        TheoremId::T5_6,
        TheoremId::T5_7,
        TheoremId::T5_8,
    ];

    pub fn order(self) -> u8 {
        if (self as u8) < 8 {
            2
        } else {
            3
        }
    }

    /// Position of the target domain in the fixed order
    /// janowski, sqrt1pz, sigmoid, crescent, sine, cardioid, arcsinh, exp.
    fn slot(self) -> u8 {
        self as u8 % 8
    }

    pub fn needs_janowski(self) -> bool {
        self.slot() == 0
    }

    pub fn as_str(self) -> &'static str {
        [
            "T4.1", "T4.2", "T4.3", "T4.4", "T4.5", "T4.6", "T4.7", "T4.8", "T5.1", "T5.2", "T5.3", "T5.4", "T5.5",
            "T5.6", "T5.7", "T5.8",
        ][self as usize]
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown theorem id {s:?} (expected T4.1..T4.8 or T5.1..T5.8)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremSpec {
    pub id: TheoremId,
    pub domain: TargetDomain,
    pub order: u8,
    pub proof_constant: f64,
}

impl TheoremSpec {
    /// Janowski theorems need `Some((C, D))`; the others ignore it.
    pub fn new(id: TheoremId, janowski: Option<(f64, f64)>) -> Result<Self, AdmissibilityError> {
        let domain = match id.slot() {
            0 => {
                let (c, d) = janowski.ok_or_else(|| AdmissibilityError::MissingJanowski(id.to_string()))?;
                TargetDomain::janowski(c, d)?
            }
            1 => TargetDomain::sqrt1pz(),
            2 => TargetDomain::sigmoid(),
            3 => TargetDomain::crescent(),
            4 => TargetDomain::sine(),
            5 => TargetDomain::cardioid(),
            6 => TargetDomain::arcsinh(),
            _ => TargetDomain::exp(),
        };
        Ok(Self { id, domain, order: id.order(), proof_constant: domain.proof_constant() })
    }

    /// `alpha1 - alpha2` for second order, `alpha1 - alpha2 - m^2 alpha3 - 3m(k-1) alpha3` for third.
    pub fn reduced_difference(&self, c: &OperatorCoefficients, m: f64, k: f64) -> f64 {
        let d = c.alpha1 - c.alpha2;
        if self.order == 3 {
            d - m * m * c.alpha3 - 3.0 * m * (k - 1.0) * c.alpha3
        } else {
            d
        }
    }

    /// The hypothesis on the coefficients, written as stated.
    ///
    /// Second-order theorems ignore `m`, `k` and `alpha3`. For `sqrt1pz` the
    /// quadratic also holds for large negative differences, where the
    /// implication is not proved; the literal inequality is returned anyway.
    pub fn threshold_holds(&self, c: &OperatorCoefficients, m: f64, k: f64) -> bool {
        if self.order == 3 && check_order(3, m, k).is_err() {
            return false;
        }
        let x = self.reduced_difference(c, m, k);
        match self.domain.kind() {
            DomainKind::Janowski { c: cc, d } => x * (1.0 - d * d) >= E * (cc - d) * (1.0 + d.abs()),
            DomainKind::Sqrt1pz => {
                if self.order == 2 {
                    let (a1, a2) = (c.alpha1, c.alpha2);
                    a1 * a1 - 2.0 * a1 * a2 + a2 * a2 - 2.0 * E * a1 + 2.0 * E * a2 >= E * E
                } else {
                    x * (x - 2.0 * E) >= E * E
                }
            }
            DomainKind::Sigmoid => x >= E * r0(),
            DomainKind::Crescent => x >= SQRT_2 * E,
            DomainKind::Sine => x >= E * 1.0_f64.sinh(),
            DomainKind::Cardioid => x >= E * E,
            DomainKind::Arcsinh => 2.0 * x >= PI * E,
            DomainKind::Exp => x >= E * (E - 1.0),
        }
    }

    /// Smallest positive reduced difference satisfying the hypothesis.
    pub fn threshold_value(&self) -> f64 {
        match self.domain.kind() {
            DomainKind::Janowski { c, d } => E * (c - d) * (1.0 + d.abs()) / (1.0 - d * d),
            // positive root of x^2 - 2e x - e^2
            DomainKind::Sqrt1pz => E * (1.0 + SQRT_2),
            DomainKind::Sigmoid => E * r0(),
            DomainKind::Crescent => SQRT_2 * E,
            DomainKind::Sine => E * 1.0_f64.sinh(),
            DomainKind::Cardioid => E * E,
            DomainKind::Arcsinh => PI * E / 2.0,
            DomainKind::Exp => E * (E - 1.0),
        }
    }

    /// Coefficients whose reduced difference is `threshold_value() + excess`.
    pub fn coefficients_at(
        &self,
        excess: f64,
        alpha2: f64,
        alpha3: f64,
        m: f64,
        k: f64,
    ) -> Result<OperatorCoefficients, AdmissibilityError> {
        self.coefficients_with_difference(self.threshold_value() + excess, alpha2, alpha3, m, k)
    }

    /// Coefficients with the given reduced difference.
    pub fn coefficients_with_difference(
        &self,
        difference: f64,
        alpha2: f64,
        alpha3: f64,
        m: f64,
        k: f64,
    ) -> Result<OperatorCoefficients, AdmissibilityError> {
        let alpha3 = if self.order == 3 { alpha3 } else { 0.0 };
        let third = if self.order == 3 { (m * m + 3.0 * m * (k - 1.0)) * alpha3 } else { 0.0 };
        OperatorCoefficients::new(alpha2 + third + difference, alpha2, alpha3)
    }
}
