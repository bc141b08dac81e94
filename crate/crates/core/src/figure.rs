//! Boundary samples for plotting, and the number format used in reports.

use std::f64::consts::{SQRT_2, TAU};

use serde::Serialize;

use crate::domains::TargetDomain;
use crate::ComplexValue;

/// Fewest samples `boundary_rows` accepts.
pub const MIN_FIGURE_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureRow {
    pub theta: f64,
    pub re: f64,
    pub im: f64,
}

impl FigureRow {
    fn new(theta: f64, w: ComplexValue) -> Self {
        Self { theta, re: w.re, im: w.im }
    }

    pub fn point(&self) -> ComplexValue {
        ComplexValue::new(self.re, self.im)
    }
}

/// `h(e^{i theta})` at `n` equally spaced angles, skipping branch points.
pub fn boundary_rows(domain: &TargetDomain, n: usize) -> Vec<FigureRow> {
    domain.sample_boundary(n).into_iter().map(|(t, w)| FigureRow::new(t, w)).collect()
}

/// `center + radius e^{i theta}` at `n` equally spaced angles.
pub fn circle_rows(center: ComplexValue, radius: f64, n: usize) -> Vec<FigureRow> {
    (0..n)
        .map(|k| {
            let theta = TAU * k as f64 / n as f64;
            FigureRow::new(theta, center + ComplexValue::from_polar(radius, theta))
        })
        .collect()
}

/// The two circles whose lune is the crescent: `|w - 1| = sqrt 2` and `|w + 1| = sqrt 2`.
pub fn crescent_circles(n: usize) -> (Vec<FigureRow>, Vec<FigureRow>) {
    (circle_rows(ComplexValue::new(1.0, 0.0), SQRT_2, n), circle_rows(ComplexValue::new(-1.0, 0.0), SQRT_2, n))
}

/// Scientific notation with 17 significant digits; parses back to the same `f64`.
pub fn sci17(x: f64) -> String {
    format!("{x:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sci17_round_trips() {
        for x in [0.0, -0.0, 1.0 / 3.0, std::f64::consts::E, 1e-300, -123456.789, f64::MAX, f64::MIN_POSITIVE] {
            let s = sci17(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(sci17(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn crescent_circle_radii() {
        let (c1, c2) = crescent_circles(1024);
        assert!(c1.iter().all(|r| ((r.point() - 1.0).norm() - SQRT_2).abs() < 1e-12));
        assert!(c2.iter().all(|r| ((r.point() + 1.0).norm() - SQRT_2).abs() < 1e-12));
    }

    #[test]
    fn crescent_boundary_lies_on_the_circles() {
        for r in boundary_rows(&TargetDomain::crescent(), 256) {
            let w = r.point();
            let d1 = ((w - 1.0).norm() - SQRT_2).abs();
            let d2 = ((w + 1.0).norm() - SQRT_2).abs();
            assert!(d1.min(d2) < 1e-12, "theta = {}", r.theta);
        }
    }
}
