//! Grid certification of `xi(r, s, t, u) not in Omega`.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    make_point, operator_part, AdmissibilityError, OperatorCoefficients, Perturbation, TheoremId, TheoremSpec,
};
use crate::domains::TargetDomain;
use crate::ComplexValue;

/// A sweep passes when its smallest margin is at least `-CERTIFICATE_TOL`.
pub const CERTIFICATE_TOL: f64 = 1e-9;

/// Third-order `k` as a function of `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KRule {
    Equal,
    PlusOne,
    Double,
}

impl KRule {
    fn apply(self, m: f64) -> f64 {
        match self {
            KRule::Equal => m,
            KRule::PlusOne => m + 1.0,
            KRule::Double => 2.0 * m,
        }
    }
}

/// Sample grid over `theta`, `(m, k)` and the `t`, `u` perturbations.
///
/// Slack and imaginary offsets are added to `t/s` and `u/s`, so each one
/// moves `t` (or `u`) by that multiple of `|s|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub theta_samples: usize,
    pub m_values: Vec<f64>,
    pub k_rules: Vec<KRule>,
    pub t_slacks: Vec<f64>,
    pub t_imags: Vec<f64>,
    pub u_slacks: Vec<f64>,
    pub u_imags: Vec<f64>,
    /// Third order only: sweep pairs with `m' <= m`, `k' <= k`, and `(m, k)` itself.
    pub mk_cap: Option<(f64, f64)>,
}

const SLACKS: [f64; 3] = [0.0, 1.0, 10.0];
const IMAGS: [f64; 5] = [0.0, 1.0, -1.0, 10.0, -10.0];

impl GridSpec {
    pub fn second_order() -> Self {
        Self {
            theta_samples: 1024,
            m_values: vec![1.0, 1.5, 2.0, 4.0, 8.0],
            k_rules: vec![KRule::Equal],
            t_slacks: SLACKS.to_vec(),
            t_imags: IMAGS.to_vec(),
            u_slacks: vec![0.0],
            u_imags: vec![0.0],
            mk_cap: None,
        }
    }

    /// Default third-order grid capped at the caller's `(m, k)`.
    pub fn third_order(m: f64, k: f64) -> Self {
        Self {
            theta_samples: 1024,
            m_values: vec![2.0, 3.0, 4.0, 8.0],
            k_rules: vec![KRule::Equal, KRule::PlusOne, KRule::Double],
            t_slacks: SLACKS.to_vec(),
            t_imags: IMAGS.to_vec(),
            u_slacks: SLACKS.to_vec(),
            u_imags: IMAGS.to_vec(),
            mk_cap: Some((m, k)),
        }
    }

    pub fn for_order(order: u8, m: f64, k: f64) -> Self {
        if order == 3 {
            Self::third_order(m, k)
        } else {
            Self::second_order()
        }
    }

    pub fn with_theta_samples(mut self, n: usize) -> Self {
        self.theta_samples = n;
        self
    }

    /// Worst-case points only: no slack, no imaginary offset.
    pub fn boundary_only(mut self) -> Self {
        self.t_slacks = vec![0.0];
        self.t_imags = vec![0.0];
        self.u_slacks = vec![0.0];
        self.u_imags = vec![0.0];
        self
    }

    /// The `(m, k)` pairs swept for the given order.
    pub fn mk_pairs(&self, order: u8) -> Vec<(f64, f64)> {
        if order == 2 {
            return self.m_values.iter().map(|&m| (m, m)).collect();
        }
        let mut pairs = Vec::new();
        match self.mk_cap {
            Some((m_cap, k_cap)) => {
                let mut ms: Vec<f64> = self.m_values.iter().copied().filter(|&m| m <= m_cap).collect();
                ms.push(m_cap);
                for m in ms {
                    let mut ks: Vec<f64> = self.k_rules.iter().map(|r| r.apply(m)).collect();
                    ks.push(k_cap);
                    pairs.extend(ks.into_iter().filter(|&k| k >= m && k <= k_cap).map(|k| (m, k)));
                }
            }
            None => {
                for &m in &self.m_values {
                    pairs.extend(self.k_rules.iter().map(|r| (m, r.apply(m))));
                }
            }
        }
        pairs.sort_by(|a, b| a.partial_cmp(b).expect("finite grid values"));
        pairs.dedup();
        pairs
    }

    fn perturbations(&self, order: u8) -> Vec<Perturbation> {
        let (u_slacks, u_imags) =
            if order == 3 { (self.u_slacks.as_slice(), self.u_imags.as_slice()) } else { (&[0.0][..], &[0.0][..]) };
        let mut out = Vec::new();
        for &t_slack in &self.t_slacks {
            for &t_imag in &self.t_imags {
                for &u_slack in u_slacks {
                    for &u_imag in u_imags {
                        out.push(Perturbation { t_slack, t_imag, u_slack, u_imag });
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleRecord {
    pub theta: f64,
    pub m: f64,
    pub k: f64,
    pub t_slack: f64,
    pub t_imag: f64,
    pub u_slack: f64,
    pub u_imag: f64,
    pub xi: ComplexValue,
    /// `|alpha1 s + alpha2 t + alpha3 u|`
    pub modulus: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ExclusionStatus {
    Pass,
    Fail,
    /// The coefficients do not satisfy the theorem's hypothesis.
    Advisory,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExclusionReport {
    pub theorem: TheoremId,
    pub domain: TargetDomain,
    pub coefficients: OperatorCoefficients,
    pub proof_constant: f64,
    pub threshold_holds: bool,
    pub mk_pairs: Vec<(f64, f64)>,
    pub samples: usize,
    /// Samples where `xi` landed inside `Omega`.
    pub containment_violations: usize,
    pub min_margin: f64,
    pub min_modulus: f64,
    pub argmin: SampleRecord,
    pub status: ExclusionStatus,
}

impl ExclusionReport {
    /// No containment violation and margin at least `-CERTIFICATE_TOL`.
    pub fn exclusion_holds(&self) -> bool {
        self.containment_violations == 0 && self.min_margin >= -CERTIFICATE_TOL
    }
}

#[derive(Debug, Clone, Copy)]
struct Tally {
    samples: usize,
    violations: usize,
    min_modulus: f64,
    best: Option<(f64, usize, SampleRecord)>,
}

impl Tally {
    fn empty() -> Self {
        Self { samples: 0, violations: 0, min_modulus: f64::INFINITY, best: None }
    }

    fn push(&mut self, index: usize, record: SampleRecord, inside: bool) {
        self.samples += 1;
        self.violations += usize::from(inside);
        self.min_modulus = self.min_modulus.min(record.modulus);
        let better = match &self.best {
            None => true,
            Some((m, i, _)) => record.margin < *m || (record.margin == *m && index < *i),
        };
        if better {
            self.best = Some((record.margin, index, record));
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.samples += other.samples;
        self.violations += other.violations;
        self.min_modulus = self.min_modulus.min(other.min_modulus);
        if let Some((m, i, r)) = other.best {
            let better = match &self.best {
                None => true,
                Some((sm, si, _)) => m < *sm || (m == *sm && i < *si),
            };
            if better {
                self.best = Some((m, i, r));
            }
        }
        self
    }
}

/// Sweeps the grid, checking `xi not in Omega` and the reduced inequality at every sample.
pub fn verify_exclusion(
    spec: &TheoremSpec,
    c: &OperatorCoefficients,
    grid: &GridSpec,
) -> Result<ExclusionReport, AdmissibilityError> {
    if c.order() != spec.order {
        return Err(AdmissibilityError::OrderMismatch { operator: c.order(), other: spec.order });
    }
    let pairs = grid.mk_pairs(spec.order);
    for &(m, k) in &pairs {
        super::check_order(spec.order, m, k)?;
    }
    let perturbations = grid.perturbations(spec.order);
    let per_theta = pairs.len() * perturbations.len();
    let n = grid.theta_samples;
    let domain = spec.domain;

    let tally = (0..n)
        .into_par_iter()
        .map(|j| -> Result<Tally, AdmissibilityError> {
            let theta = TAU * j as f64 / n as f64;
            let mut tally = Tally::empty();
            let mut index = j * per_theta;
            for &(m, k) in &pairs {
                for &p in &perturbations {
                    let pt = make_point(theta, m, k, p, spec.order)?;
                    let x = operator_part(c, &pt)?;
                    let xi = 1.0 + x;
                    let record = SampleRecord {
                        theta,
                        m,
                        k,
                        t_slack: p.t_slack,
                        t_imag: p.t_imag,
                        u_slack: p.u_slack,
                        u_imag: p.u_imag,
                        xi,
                        modulus: x.norm(),
                        margin: domain.reduced_margin(x),
                    };
                    tally.push(index, record, domain.contains(xi));
                    index += 1;
                }
            }
            Ok(tally)
        })
        .try_reduce(Tally::empty, |a, b| Ok(a.merge(b)))?;

    let (min_margin, _, argmin) = tally.best.ok_or_else(|| AdmissibilityError::Search("empty grid".into()))?;
    let threshold_holds = pairs.iter().all(|&(m, k)| spec.threshold_holds(c, m, k));
    let mut report = ExclusionReport {
        theorem: spec.id,
        domain,
        coefficients: *c,
        proof_constant: spec.proof_constant,
        threshold_holds,
        mk_pairs: pairs,
        samples: tally.samples,
        containment_violations: tally.violations,
        min_margin,
        min_modulus: tally.min_modulus,
        argmin,
        status: ExclusionStatus::Advisory,
    };
    if threshold_holds {
        report.status = if report.exclusion_holds() { ExclusionStatus::Pass } else { ExclusionStatus::Fail };
    }
    Ok(report)
}

/// Smallest exclusion margin over the grid; negative means some sample breaks the reduced inequality.
pub fn estimate_min_gap(
    spec: &TheoremSpec,
    c: &OperatorCoefficients,
    grid: &GridSpec,
) -> Result<f64, AdmissibilityError> {
    Ok(verify_exclusion(spec, c, grid)?.min_margin)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdSearch {
    pub theorem: TheoremId,
    /// Smallest reduced difference found with nonnegative gap.
    pub empirical: f64,
    /// The theorem's sufficient reduced difference.
    pub stated_threshold: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    pub m: f64,
    pub k: f64,
    pub bracket: (f64, f64),
    pub tolerance: f64,
    pub evaluations: usize,
}

/// Bisection on the reduced difference over `[lo, hi]` for the smallest value
/// whose grid gap is nonnegative.
#[allow(clippy::too_many_arguments)]
pub fn find_threshold(
    spec: &TheoremSpec,
    alpha2: f64,
    alpha3: f64,
    m: f64,
    k: f64,
    grid: &GridSpec,
    bracket: (f64, f64),
    tol: f64,
) -> Result<ThresholdSearch, AdmissibilityError> {
    let mut evaluations = 0;
    let mut gap = |d: f64| -> Result<f64, AdmissibilityError> {
        evaluations += 1;
        let c = spec.coefficients_with_difference(d, alpha2, alpha3, m, k)?;
        estimate_min_gap(spec, &c, grid)
    };
    let (mut lo, mut hi) = bracket;
    if gap(hi)? < 0.0 {
        return Err(AdmissibilityError::Search(format!("gap is negative at the upper end {hi}")));
    }
    if gap(lo)? >= 0.0 {
        hi = lo;
    } else {
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if gap(mid)? >= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }
    Ok(ThresholdSearch {
        theorem: spec.id,
        empirical: hi,
        stated_threshold: spec.threshold_value(),
        alpha2,
        alpha3,
        m,
        k,
        bracket,
        tolerance: tol,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissibility::proof_lower_bound;
    use std::f64::consts::{E, PI, SQRT_2};

    fn spec(id: TheoremId) -> TheoremSpec {
        TheoremSpec::new(id, Some((1.0, 0.0))).unwrap()
    }

    #[test]
    fn second_order_pairs() {
        let g = GridSpec::second_order();
        assert_eq!(g.mk_pairs(2).len(), 5);
    }

    #[test]
    fn third_order_pairs_respect_cap() {
        assert_eq!(GridSpec::third_order(2.0, 2.0).mk_pairs(3), vec![(2.0, 2.0)]);
        let pairs = GridSpec::third_order(4.0, 8.0).mk_pairs(3);
        assert!(pairs.contains(&(2.0, 3.0)) && pairs.contains(&(4.0, 8.0)) && pairs.contains(&(3.0, 6.0)));
        assert!(pairs.iter().all(|&(m, k)| m >= 2.0 && k >= m && m <= 4.0 && k <= 8.0));
        let mut uncapped = GridSpec::third_order(2.0, 2.0);
        uncapped.mk_cap = None;
        assert_eq!(uncapped.mk_pairs(3).len(), 12);
    }

    #[test]
    fn exp_theorem_passes_and_is_tight_at_pi() {
        let s = spec(TheoremId::T4_8);
        let c = OperatorCoefficients::second_order(E * (E - 1.0) + 1e-6, 1e-6).unwrap();
        let g = GridSpec::second_order().with_theta_samples(512);
        let r = verify_exclusion(&s, &c, &g).unwrap();
        assert_eq!(r.status, ExclusionStatus::Pass);
        assert!(r.min_margin >= -CERTIFICATE_TOL);
        assert!((r.argmin.theta - PI).abs() < 1e-12);
        assert_eq!(r.argmin.m, 1.0);
    }

    #[test]
    fn crescent_theorem_never_enters_c1() {
        let s = spec(TheoremId::T4_4);
        let c = OperatorCoefficients::second_order(SQRT_2 * E + 0.1, 0.05).unwrap();
        let r = verify_exclusion(&s, &c, &GridSpec::second_order().with_theta_samples(512)).unwrap();
        assert_eq!(r.status, ExclusionStatus::Pass);
        assert!(r.min_modulus >= SQRT_2);
    }

    #[test]
    fn cardioid_third_order() {
        let s = spec(TheoremId::T5_6);
        let c = OperatorCoefficients::new(E * E + 2.0, 0.5, 0.1).unwrap();
        let r = verify_exclusion(&s, &c, &GridSpec::third_order(2.0, 2.0).with_theta_samples(256)).unwrap();
        assert_eq!(r.status, ExclusionStatus::Pass);
        assert!(r.min_modulus >= E);
    }

    #[test]
    fn below_threshold_is_advisory() {
        let s = spec(TheoremId::T4_8);
        let c = OperatorCoefficients::second_order(1.0, 0.5).unwrap();
        let r = verify_exclusion(&s, &c, &GridSpec::second_order().with_theta_samples(64)).unwrap();
        assert_eq!(r.status, ExclusionStatus::Advisory);
        assert!(r.min_margin < 0.0);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let c = OperatorCoefficients::new(10.0, 1.0, 0.1).unwrap();
        assert!(verify_exclusion(&spec(TheoremId::T4_8), &c, &GridSpec::second_order()).is_err());
    }

    #[test]
    fn gap_sign_tracks_threshold() {
        let s = spec(TheoremId::T4_8);
        let g = GridSpec::second_order().with_theta_samples(256);
        let at = s.coefficients_at(0.0, 0.01, 0.0, 1.0, 1.0).unwrap();
        assert!(estimate_min_gap(&s, &at, &g).unwrap().abs() < 1e-3);
        let above = s.coefficients_at(1.0, 0.01, 0.0, 1.0, 1.0).unwrap();
        assert!(estimate_min_gap(&s, &above, &g).unwrap() > 0.0);
        let low = OperatorCoefficients::second_order(1.01, 0.01).unwrap();
        assert!(estimate_min_gap(&s, &low, &g).unwrap() < 0.0);
    }

    #[test]
    fn modulus_dominates_lower_bound_at_worst_case_points() {
        let g = GridSpec::second_order().with_theta_samples(128).boundary_only();
        let c = OperatorCoefficients::second_order(3.0, 0.7).unwrap();
        for (m, k) in g.mk_pairs(2) {
            for j in 0..128 {
                let theta = TAU * j as f64 / 128.0;
                let pt = make_point(theta, m, k, Perturbation::default(), 2).unwrap();
                let x = operator_part(&c, &pt).unwrap();
                assert!(x.norm() >= proof_lower_bound(&c, theta, m, k).unwrap() - 1e-9);
            }
        }
    }

    #[test]
    fn threshold_search_recovers_exp_threshold() {
        let s = spec(TheoremId::T4_8);
        let g = GridSpec::second_order().with_theta_samples(128);
        let found = find_threshold(&s, 0.01, 0.0, 1.0, 1.0, &g, (0.0, 20.0), 1e-7).unwrap();
        assert!(found.empirical <= E * (E - 1.0) + 1e-3);
        assert!(found.empirical > 0.0);
        assert!((found.empirical - found.stated_threshold).abs() < 1e-6);
    }
}
