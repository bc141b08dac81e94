//! Winding-number membership for sampled closed curves.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::DomainError;
use crate::ComplexValue;

/// Minimum number of boundary samples accepted by [`winding_membership`].
pub const MIN_BOUNDARY_SAMPLES: usize = 256;

/// Probe points closer than this to a boundary sample are rejected.
pub const PROXIMITY_GUARD: f64 = 1e-9;

/// Total change of `arg(b_k - w)` around the closed polyline through `boundary`.
pub fn argument_change(boundary: &[ComplexValue], w: ComplexValue) -> f64 {
    let n = boundary.len();
    (0..n)
        .map(|k| {
            let a = boundary[k] - w;
            let b = boundary[(k + 1) % n] - w;
            // arg(b / a) without dividing
            let cross = a.re * b.im - a.im * b.re;
            let dot = a.re * b.re + a.im * b.im;
            cross.atan2(dot)
        })
        .sum()
}

/// Whether `w` is enclosed exactly once by the closed polyline `boundary`.
pub fn winding_membership(boundary: &[ComplexValue], w: ComplexValue) -> Result<bool, DomainError> {
    if boundary.len() < MIN_BOUNDARY_SAMPLES {
        return Err(DomainError::TooFewSamples(boundary.len()));
    }
    if boundary.iter().any(|b| (b - w).norm() < PROXIMITY_GUARD) {
        return Err(DomainError::TooCloseToBoundary);
    }
    Ok((argument_change(boundary, w) - TAU).abs() < 1e-6)
}

/// A closed polyline with precomputed radii about an interior reference point.
///
/// Points closer to the reference than every segment are enclosed with the
/// reference's winding number; points farther than every vertex have winding
/// zero. Everything in between falls back to a signed crossing count.
#[derive(Debug, Clone)]
pub struct Polyline {
    vertices: Vec<ComplexValue>,
    reference: ComplexValue,
    inner_radius: f64,
    outer_radius: f64,
}

impl Polyline {
    pub fn new(vertices: Vec<ComplexValue>, reference: ComplexValue) -> Self {
        let n = vertices.len();
        let outer_radius = vertices.iter().map(|v| (v - reference).norm()).fold(0.0, f64::max);
        let inner_radius = (0..n)
            .map(|k| segment_distance(reference, vertices[k], vertices[(k + 1) % n]))
            .fold(f64::INFINITY, f64::min);
        Self { vertices, reference, inner_radius, outer_radius }
    }

    pub fn vertices(&self) -> &[ComplexValue] {
        &self.vertices
    }

    pub fn outer_radius(&self) -> f64 {
        self.outer_radius
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    /// Signed crossing count of the rightward ray from `w`.
    pub fn winding_number(&self, w: ComplexValue) -> i32 {
        let n = self.vertices.len();
        let mut winding = 0;
        for k in 0..n {
            let p1 = self.vertices[k];
            let p2 = self.vertices[(k + 1) % n];
            let cross = (p1.re - w.re) * (p2.im - w.im) - (p2.re - w.re) * (p1.im - w.im);
            if p1.im <= w.im {
                if p2.im > w.im && cross > 0.0 {
                    winding += 1;
                }
            } else if p2.im <= w.im && cross < 0.0 {
                winding -= 1;
            }
        }
        winding
    }

    /// Winding number one about `w`, with points near a vertex reported outside.
    pub fn encloses(&self, w: ComplexValue) -> bool {
        let r = (w - self.reference).norm();
        if r > self.outer_radius {
            return false;
        }
        if r < self.inner_radius {
            return true;
        }
        if self.vertices.iter().any(|b| (b - w).norm() < PROXIMITY_GUARD) {
            return false;
        }
        self.winding_number(w) == 1
    }
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_circle(n: usize) -> Vec<Complex64> {
        (0..n).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64)).collect()
    }

    #[test]
    fn circle_encloses_origin_not_two() {
        let c = unit_circle(512);
        assert_eq!(winding_membership(&c, Complex64::new(0.0, 0.0)), Ok(true));
        assert_eq!(winding_membership(&c, Complex64::new(2.0, 0.0)), Ok(false));
    }

    #[test]
    fn cardioid_encloses_its_center() {
        let b: Vec<_> = unit_circle(1024).into_iter().map(|z| 1.0 + z * z.exp()).collect();
        assert_eq!(winding_membership(&b, Complex64::new(1.0, 0.0)), Ok(true));
    }

    #[test]
    fn preconditions() {
        let c = unit_circle(512);
        assert_eq!(winding_membership(&c, c[3]), Err(DomainError::TooCloseToBoundary));
        assert_eq!(
            winding_membership(&unit_circle(100), Complex64::new(0.0, 0.0)),
            Err(DomainError::TooFewSamples(100))
        );
    }

    #[test]
    fn clockwise_curve_does_not_count() {
        let mut c = unit_circle(512);
        c.reverse();
        assert_eq!(winding_membership(&c, Complex64::new(0.0, 0.0)), Ok(false));
    }

    #[test]
    fn crossing_count_matches_argument_change() {
        let b: Vec<_> = unit_circle(1024).into_iter().map(|z| 1.0 + z * z.exp()).collect();
        let poly = Polyline::new(b.clone(), Complex64::new(1.0, 0.0));
        for i in 0..40 {
            for j in 0..40 {
                let w = Complex64::new(-1.5 + 0.11 * i as f64, -3.0 + 0.15 * j as f64);
                let by_angle = winding_membership(&b, w).unwrap();
                assert_eq!(poly.encloses(w), by_angle, "w = {w}");
            }
        }
    }
}
