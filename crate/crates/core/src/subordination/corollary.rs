//! The quantities `A_j = z^j f^(j) / f` and the operators built from them.

use serde::Serialize;

use super::{is_subordinate, lhs_operator, SubordinationError, DEFAULT_CIRCLE_SAMPLES, DEFAULT_RHO_MAX};
use crate::admissibility::OperatorCoefficients;
use crate::domains::TargetDomain;
use crate::series::TaylorSeries;
use crate::ComplexValue;

/// Coefficientwise tolerance of the `Y_f` audit.
pub const IDENTITY_TOL: f64 = 1e-10;

const CLASS_A_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarlikeQuantities {
    pub a1: TaylorSeries,
    pub a2: TaylorSeries,
    pub a3: TaylorSeries,
    pub a4: TaylorSeries,
}

/// `A_1..A_4` for `f = z + a_2 z^2 + ...`.
///
/// Both `z^j f^(j)` and `f` are divided by `z` first, so the division is by
/// `f(z)/z`, which is 1 at the origin. The order drops by one.
pub fn starlike_quantities(f: &TaylorSeries) -> Result<StarlikeQuantities, SubordinationError> {
    if !f.is_class_a(CLASS_A_TOL) {
        return Err(SubordinationError::NotClassA);
    }
    let g = f.divide_by_z()?;
    let a =
        |j: usize| -> Result<TaylorSeries, SubordinationError> { Ok(f.z_pow_derivative(j).divide_by_z()?.divide(&g)?) };
    Ok(StarlikeQuantities { a1: a(1)?, a2: a(2)?, a3: a(3)?, a4: a(4)? })
}

fn one(order: usize) -> TaylorSeries {
    TaylorSeries::constant(ComplexValue::new(1.0, 0.0), order)
}

/// `1 + a1 (A2 - A1^2 + A1) + a2 (A3 + 2A2 + 2A1^3 - 2A1^2 - 3A1A2)`, as printed.
pub fn y_f_printed(q: &StarlikeQuantities, c: &OperatorCoefficients) -> TaylorSeries {
    let (a1, a2, a3) = (&q.a1, &q.a2, &q.a3);
    let a1sq = a1 * a1;
    let first = &(a2 - &a1sq) + a1;
    let second = &(&(a3 + &(2.0 * a2)) + &(2.0 * &(&a1sq * a1))) - &(&(2.0 * &a1sq) + &(3.0 * &(a1 * a2)));
    &(&one(a1.order()) + &first.scale_real(c.alpha1)) + &second.scale_real(c.alpha2)
}

/// The printed `Y_f`, checked against `lhs_operator(zf'/f)`.
pub fn y_f(f: &TaylorSeries, c: &OperatorCoefficients) -> Result<TaylorSeries, SubordinationError> {
    if c.alpha3 != 0.0 {
        return Err(SubordinationError::NotSecondOrder);
    }
    let q = starlike_quantities(f)?;
    let printed = y_f_printed(&q, c);
    let gap = printed.max_coeff_diff(&lhs_operator(&q.a1, c));
    if gap > IDENTITY_TOL {
        return Err(SubordinationError::IdentityMismatch(gap));
    }
    Ok(printed)
}

/// `1 + a1 z p' + a2 z^2 p'' + a3 z^3 p'''` at `p = zf'/f`.
pub fn chi_f_direct(f: &TaylorSeries, c: &OperatorCoefficients) -> Result<TaylorSeries, SubordinationError> {
    Ok(lhs_operator(&starlike_quantities(f)?.a1, c))
}

/// The third-order expression exactly as printed, including the `(6A_1)^4` term.
pub fn chi_f_printed(q: &StarlikeQuantities, c: &OperatorCoefficients) -> TaylorSeries {
    let (a1, a2, a3, a4) = (&q.a1, &q.a2, &q.a3, &q.a4);
    let a1sq = a1 * a1;
    let a1cu = &a1sq * a1;
    let six_a1 = 6.0 * a1;
    let six_a1_sq = &six_a1 * &six_a1;
    let t2 = a2 - &a1sq;
    let t3 = &(&(2.0 * &a1cu) - &(3.0 * &(a1 * a2))) + &(3.0 * a3);
    let t4 =
        &(&(&(a4 - &(3.0 * &(a2 * a2))) - &(&six_a1_sq * &six_a1_sq)) - &(4.0 * &(a1 * a3))) + &(12.0 * &(&a1sq * a2));
    let mut out = &one(a1.order()) + &a1.scale_real(c.alpha1);
    out = &out + &t2.scale_real(c.alpha1 + 2.0 * c.alpha2);
    out = &out + &t3.scale_real(c.alpha2 + 3.0 * c.alpha3);
    &out + &t4.scale_real(c.alpha3)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiDiscrepancy {
    /// Largest coefficient gap between printed and direct `chi_f`.
    pub max_coeff_diff: f64,
    /// Constant-term gap; the direct value is always 1.
    pub constant_term_diff: f64,
    /// Gap between the printed `chi_f` at `alpha3 = 0` and the direct operator there.
    pub printed_alpha3_zero_diff: f64,
    /// Gap between the direct `chi_f` at `alpha3 = 0` and the printed `Y_f`.
    pub direct_alpha3_zero_vs_y_f: f64,
}

impl ChiDiscrepancy {
    pub fn is_nonzero(&self) -> bool {
        self.max_coeff_diff > IDENTITY_TOL
    }
}

pub fn chi_f_report(f: &TaylorSeries, c: &OperatorCoefficients) -> Result<ChiDiscrepancy, SubordinationError> {
    let q = starlike_quantities(f)?;
    let direct = lhs_operator(&q.a1, c);
    let printed = chi_f_printed(&q, c);
    let c0 = OperatorCoefficients { alpha3: 0.0, ..*c };
    let direct0 = lhs_operator(&q.a1, &c0);
    Ok(ChiDiscrepancy {
        max_coeff_diff: printed.max_coeff_diff(&direct),
        constant_term_diff: (printed.constant_term() - direct.constant_term()).norm(),
        printed_alpha3_zero_diff: chi_f_printed(&q, &c0).max_coeff_diff(&direct0),
        direct_alpha3_zero_vs_y_f: direct0.max_coeff_diff(&y_f_printed(&q, &c0)),
    })
}

/// `f in S*_e`: `zf'/f` subordinate to `e^z` on the default circles.
pub fn classify_starlike_exp(f: &TaylorSeries) -> Result<bool, SubordinationError> {
    let q = starlike_quantities(f)?;
    is_subordinate(&q.a1, &TargetDomain::exp(), DEFAULT_RHO_MAX, DEFAULT_CIRCLE_SAMPLES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn identity() -> TaylorSeries {
        TaylorSeries::identity(16)
    }

    fn koebe_like(order: usize) -> TaylorSeries {
        // z / (1 - z)
        let mut c = vec![0.0];
        c.extend(std::iter::repeat_n(1.0, order));
        TaylorSeries::from_real(&c, order).unwrap()
    }

    fn random_class_a(rng: &mut ChaCha8Rng, degree: usize, order: usize) -> TaylorSeries {
        let mut c = vec![ComplexValue::new(0.0, 0.0), ComplexValue::new(1.0, 0.0)];
        for _ in 2..=degree {
            c.push(ComplexValue::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5)));
        }
        TaylorSeries::new(c, order).unwrap()
    }

    #[test]
    fn quantities_of_identity() {
        let q = starlike_quantities(&identity()).unwrap();
        assert_eq!(q.a1, TaylorSeries::constant(ComplexValue::new(1.0, 0.0), 15));
        for a in [&q.a2, &q.a3, &q.a4] {
            assert_eq!(*a, TaylorSeries::zero(15));
        }
    }

    #[test]
    fn quantities_examples() {
        let f = TaylorSeries::from_real(&[0.0, 1.0, 1.0], 16).unwrap();
        let q = starlike_quantities(&f).unwrap();
        // (1 + 2z) / (1 + z) = 1 + z - z^2 + z^3 - ...
        for k in 1..10 {
            let expected = if k % 2 == 1 { 1.0 } else { -1.0 };
            assert!((q.a1.coeff(k).re - expected).abs() < 1e-14);
        }
        let q = starlike_quantities(&koebe_like(20)).unwrap();
        for k in 0..=19 {
            assert!((q.a1.coeff(k).re - 1.0).abs() < 1e-12);
        }
        assert!(q.a2.constant_term().norm() == 0.0 && q.a4.constant_term().norm() == 0.0);
    }

    #[test]
    fn non_class_a_is_rejected() {
        let f = TaylorSeries::from_real(&[0.0, 2.0, 1.0], 8).unwrap();
        assert_eq!(starlike_quantities(&f), Err(SubordinationError::NotClassA));
    }

    #[test]
    fn y_f_examples() {
        let c = OperatorCoefficients::second_order(2.0, 1.0).unwrap();
        let y = y_f(&identity(), &c).unwrap();
        assert_eq!(y, TaylorSeries::constant(ComplexValue::new(1.0, 0.0), 15));

        let f = TaylorSeries::from_real(&[0.0, 1.0, 1.0], 16).unwrap();
        let tiny = OperatorCoefficients::second_order(1.0, 1e-300).unwrap();
        let q = starlike_quantities(&f).unwrap();
        let expected = &one(15) + &(&(&q.a2 - &(&q.a1 * &q.a1)) + &q.a1);
        assert!(y_f(&f, &tiny).unwrap().max_coeff_diff(&expected) < 1e-12);

        let third = OperatorCoefficients::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(y_f(&f, &third), Err(SubordinationError::NotSecondOrder));
    }

    #[test]
    fn y_f_identity_on_random_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let f = random_class_a(&mut rng, 6, 24);
            let c =
                OperatorCoefficients::second_order(rng.random_range(0.01..5.0), rng.random_range(0.01..5.0)).unwrap();
            y_f(&f, &c).unwrap();
        }
    }

    #[test]
    fn printed_chi_f_disagrees_with_direct() {
        let c = OperatorCoefficients::new(2.0, 1.0, 0.5).unwrap();
        let r = chi_f_report(&identity(), &c).unwrap();
        // at f = z only the constant terms survive: 6 alpha3 - 1296 alpha3
        assert!((r.constant_term_diff - 1290.0 * 0.5).abs() < 1e-9);

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = random_class_a(&mut rng, 6, 24);
        let r = chi_f_report(&f, &c).unwrap();
        assert!(r.is_nonzero());
        assert!(r.printed_alpha3_zero_diff > IDENTITY_TOL);
        assert!(r.direct_alpha3_zero_vs_y_f < 1e-12);
    }

    #[test]
    fn direct_chi_f_reduces_to_y_f() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_class_a(&mut rng, 6, 24);
        let c = OperatorCoefficients::second_order(1.5, 0.7).unwrap();
        let direct = chi_f_direct(&f, &c).unwrap();
        assert!(direct.max_coeff_diff(&y_f(&f, &c).unwrap()) < 1e-12);
    }

    #[test]
    fn classification_examples() {
        assert!(classify_starlike_exp(&identity()).unwrap());
        // z e^{z/2}
        let f = &identity() * &TaylorSeries::exp_of_scaled(ComplexValue::new(0.5, 0.0), 16);
        let q = starlike_quantities(&f).unwrap();
        assert!((q.a1.coeff(1).re - 0.5).abs() < 1e-14 && q.a1.coeff(2).norm() < 1e-14);
        assert!(classify_starlike_exp(&f).unwrap());
        assert!(!classify_starlike_exp(&koebe_like(16)).unwrap());
    }
}
