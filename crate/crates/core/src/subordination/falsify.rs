//! Random search for `p` with `L(p) < h` but `p` not subordinate to `e^z`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::{lhs_operator, test_radii, third_order_side_condition, DEFAULT_CIRCLE_SAMPLES, DEFAULT_RHO_MAX};
use crate::admissibility::{OperatorCoefficients, TheoremId, TheoremSpec};
use crate::domains::TargetDomain;
use crate::series::{circle_point, TaylorSeries};
use crate::ComplexValue;

/// Highest degree of a trial polynomial.
const TRIAL_DEGREE: usize = 8;
/// `log10` of the smallest amplitude factor.
const AMPLITUDE_DECADES: f64 = -3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FalsifyOptions {
    pub trials: usize,
    pub seed: u64,
    /// Third order only: the side condition `e sup |zp'| <= m` and the threshold pair `(m, k)`.
    pub m: f64,
    pub k: f64,
    pub rho_max: f64,
    pub samples: usize,
}

impl FalsifyOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self { trials, seed, m: 2.0, k: 2.0, rho_max: DEFAULT_RHO_MAX, samples: DEFAULT_CIRCLE_SAMPLES }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ImplicationReport {
    pub theorem: TheoremId,
    pub coefficients: OperatorCoefficients,
    pub trials: usize,
    /// Trials where the left-hand side was subordinate to `h` (and the side condition held).
    pub hypothesis_hits: usize,
    /// Hits where `p` was not subordinate to `e^z`.
    pub violations: usize,
    /// Smallest `1 - max |log p|` over the hits; negative exactly when a hit violates.
    pub worst_margin: f64,
    pub seed: u64,
    /// The coefficients miss the theorem's hypothesis, so violations are not counterexamples.
    pub advisory: bool,
}

/// The `i`-th trial polynomial `1 + sum_{j >= j0} c_j z^j`, `c_j` complex
/// normal times `lambda 0.3 / j^2`.
///
/// `lambda` is drawn log-uniformly from `[1e-3, 1]` once per trial. With
/// `lambda = 1` alone almost no left-hand side lands in `h(D)` once `alpha1`
/// is past the threshold.
pub fn random_trial_series(seed: u64, index: u64, j0: usize) -> TaylorSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let amplitude = 10f64.powf(rng.random_range(AMPLITUDE_DECADES..0.0));
    let mut coeffs = vec![ComplexValue::new(0.0, 0.0); TRIAL_DEGREE + 1];
    coeffs[0] = ComplexValue::new(1.0, 0.0);
    for (j, c) in coeffs.iter_mut().enumerate().skip(j0) {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        let scale = amplitude * 0.3 / (j * j) as f64 * std::f64::consts::FRAC_1_SQRT_2;
        *c = ComplexValue::new(re, im) * scale;
    }
    TaylorSeries::new(coeffs, TRIAL_DEGREE).expect("finite coefficients")
}

struct Circles {
    points: Vec<ComplexValue>,
}

impl Circles {
    fn new(rho_max: f64, n: usize) -> Self {
        let points = test_radii(rho_max).iter().flat_map(|&rho| (0..n).map(move |k| circle_point(rho, k, n))).collect();
        Self { points }
    }

    fn inside(&self, p: &TaylorSeries, d: &TargetDomain) -> bool {
        self.points.iter().all(|&z| d.contains(p.evaluate(z)))
    }

    /// `1 - max |log p|`, the exp-domain margin.
    fn exp_margin(&self, p: &TaylorSeries) -> f64 {
        let worst = self
            .points
            .iter()
            .map(|&z| {
                let w = p.evaluate(z);
                if w.norm() == 0.0 {
                    f64::INFINITY
                } else {
                    w.ln().norm()
                }
            })
            .fold(0.0, f64::max);
        1.0 - worst
    }
}

#[derive(Clone, Copy)]
struct Tally {
    hits: usize,
    violations: usize,
    worst: f64,
}

/// [`falsify_with`] at default options (`m = k = 2` for third order).
pub fn falsify_implication(
    spec: &TheoremSpec,
    c: &OperatorCoefficients,
    trials: usize,
    seed: u64,
) -> ImplicationReport {
    falsify_with(spec, c, &FalsifyOptions::new(trials, seed))
}

/// Draws `trials` random `p`, counts hypothesis hits and, among them, failures of `p < e^z`.
///
/// Third-order trials start at `z^2` and must also pass the side condition.
pub fn falsify_with(spec: &TheoremSpec, c: &OperatorCoefficients, opts: &FalsifyOptions) -> ImplicationReport {
    let third = spec.order == 3;
    let j0 = if third { 2 } else { 1 };
    let circles = Circles::new(opts.rho_max, opts.samples.max(DEFAULT_CIRCLE_SAMPLES));
    let exp = TargetDomain::exp();

    let tally = (0..opts.trials as u64)
        .into_par_iter()
        .map(|i| {
            let p = random_trial_series(opts.seed, i, j0);
            if third && !third_order_side_condition(&p, opts.m) {
                return None;
            }
            if !circles.inside(&lhs_operator(&p, c), &spec.domain) {
                return None;
            }
            let violated = !circles.inside(&p, &exp);
            Some(Tally { hits: 1, violations: usize::from(violated), worst: circles.exp_margin(&p) })
        })
        .fold(
            || Tally { hits: 0, violations: 0, worst: f64::INFINITY },
            |acc, t| match t {
                None => acc,
                Some(t) => Tally {
                    hits: acc.hits + t.hits,
                    violations: acc.violations + t.violations,
                    worst: acc.worst.min(t.worst),
                },
            },
        )
        .reduce(
            || Tally { hits: 0, violations: 0, worst: f64::INFINITY },
            |a, b| Tally {
                hits: a.hits + b.hits,
                violations: a.violations + b.violations,
                worst: a.worst.min(b.worst),
            },
        );

    ImplicationReport {
        theorem: spec.id,
        coefficients: *c,
        trials: opts.trials,
        hypothesis_hits: tally.hits,
        violations: tally.violations,
        worst_margin: tally.worst,
        seed: opts.seed,
        advisory: !spec.threshold_holds(c, opts.m, opts.k),
    }
}
