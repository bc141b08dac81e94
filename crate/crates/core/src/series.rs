//! Truncated power series about the origin.
//!
//! A [`TaylorSeries`] of order `N` stores the coefficients `c_0..=c_N` of
//! `c_0 + c_1 z + ... + c_N z^N + O(z^{N+1})`. Binary operations truncate to
//! the smaller operand order; nothing is ever padded to a higher order.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::ComplexValue;

/// Default truncation degree.
pub const DEFAULT_ORDER: usize = 32;

/// `|b_0|` at or below this value makes `a / b` an error.
pub const DIVISION_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("leading coefficient {0:e} is below the division guard")]
    NearZeroLeadingCoefficient(f64),
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },
    #[error("constant term must vanish to divide by z")]
    NonzeroConstantTerm,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaylorSeries {
    coeffs: Vec<ComplexValue>,
}

impl TaylorSeries {
    /// Builds a series of the given order. Missing coefficients are zero and
    /// coefficients above `order` are dropped.
    pub fn new(mut coeffs: Vec<ComplexValue>, order: usize) -> Result<Self, SeriesError> {
        if order == 0 {
            return Err(SeriesError::ZeroOrder);
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(SeriesError::NonFinite { index });
        }
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64], order: usize) -> Result<Self, SeriesError> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        assert!(order >= 1, "truncation order must be at least 1");
        Self { coeffs: vec![Complex64::new(0.0, 0.0); order + 1] }
    }

    pub fn constant(value: ComplexValue, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value;
        s
    }

    /// The series `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[1] = Complex64::new(1.0, 0.0);
        s
    }

    /// `e^{a z}` truncated at `order`.
    pub fn exp_of_scaled(a: ComplexValue, order: usize) -> Self {
        let mut s = Self::zero(order);
        let mut term = Complex64::new(1.0, 0.0);
        for (k, c) in s.coeffs.iter_mut().enumerate() {
            if k > 0 {
                term = term * a / k as f64;
            }
            *c = term;
        }
        s
    }

    /// `1 / (1 - z)` truncated at `order`.
    pub fn geometric(order: usize) -> Self {
        Self { coeffs: vec![Complex64::new(1.0, 0.0); order + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ComplexValue] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ComplexValue {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> ComplexValue {
        self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1 && order <= self.order(), "can only truncate to a lower order");
        Self { coeffs: self.coeffs[..=order].to_vec() }
    }

    /// `c_0 = 0` and `c_1 = 1` within `tol`.
    pub fn is_class_a(&self, tol: f64) -> bool {
        self.coeffs[0].norm() <= tol && (self.coeffs[1] - 1.0).norm() <= tol
    }

    /// Membership in `H[1, n]`: `c_0 = 1` and `c_j = 0` for `1 <= j < n`.
    pub fn is_h1n(&self, n: usize, tol: f64) -> bool {
        (self.coeffs[0] - 1.0).norm() <= tol && self.coeffs.iter().take(n).skip(1).all(|c| c.norm() <= tol)
    }

    pub fn scale(&self, k: ComplexValue) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    pub fn scale_real(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    /// Cauchy product truncated to the smaller order.
    pub fn multiply(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// `q` with `q * divisor = self` up to the smaller order.
    pub fn divide(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let b0 = divisor.coeffs[0];
        if b0.norm() <= DIVISION_GUARD {
            return Err(SeriesError::NearZeroLeadingCoefficient(b0.norm()));
        }
        let n = self.order().min(divisor.order());
        let mut q = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= divisor.coeffs[j] * q[k - j];
            }
            q[k] = acc / b0;
            if !q[k].is_finite() {
                return Err(SeriesError::NonFinite { index: k });
            }
        }
        Ok(Self { coeffs: q })
    }

    /// `z a'(z)`.
    pub fn z_derivative(&self) -> Self {
        self.z_pow_derivative(1)
    }

    /// `z^j a^{(j)}(z)`: coefficient `k` becomes `k (k-1) ... (k-j+1) c_k`.
    pub fn z_pow_derivative(&self, j: usize) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, c)| c * falling_factorial(k, j)).collect();
        Self { coeffs }
    }

    /// `a(z) / z` for a series with vanishing constant term. The order drops by one.
    pub fn divide_by_z(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != Complex64::new(0.0, 0.0) {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        if self.order() < 2 {
            return Err(SeriesError::ZeroOrder);
        }
        Ok(Self { coeffs: self.coeffs[1..].to_vec() })
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn evaluate(&self, z: ComplexValue) -> ComplexValue {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Values at `rho e^{2 pi i k / n}` for `k = 0..n`.
    pub fn eval_on_circle(&self, rho: f64, n: usize) -> Vec<ComplexValue> {
        (0..n).map(|k| self.evaluate(circle_point(rho, k, n))).collect()
    }

    /// Largest coefficientwise distance to `other` over the common order.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `rho e^{2 pi i k / n}`.
pub(crate) fn circle_point(rho: f64, k: usize, n: usize) -> ComplexValue {
    Complex64::from_polar(rho, std::f64::consts::TAU * k as f64 / n as f64)
}

fn falling_factorial(k: usize, j: usize) -> f64 {
    if j > k {
        return 0.0;
    }
    ((k - j + 1)..=k).map(|x| x as f64).product()
}

impl Add for &TaylorSeries {
    type Output = TaylorSeries;

    fn add(self, rhs: &TaylorSeries) -> TaylorSeries {
        let n = self.order().min(rhs.order());
        TaylorSeries { coeffs: (0..=n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect() }
    }
}

impl Sub for &TaylorSeries {
    type Output = TaylorSeries;

    fn sub(self, rhs: &TaylorSeries) -> TaylorSeries {
        let n = self.order().min(rhs.order());
        TaylorSeries { coeffs: (0..=n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect() }
    }
}

impl Mul for &TaylorSeries {
    type Output = TaylorSeries;

    fn mul(self, rhs: &TaylorSeries) -> TaylorSeries {
        self.multiply(rhs)
    }
}

impl Mul<&TaylorSeries> for f64 {
    type Output = TaylorSeries;

    fn mul(self, rhs: &TaylorSeries) -> TaylorSeries {
        rhs.scale_real(self)
    }
}

impl Neg for &TaylorSeries {
    type Output = TaylorSeries;

    fn neg(self) -> TaylorSeries {
        self.scale_real(-1.0)
    }
}
