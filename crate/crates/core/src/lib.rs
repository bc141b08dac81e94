//! Verification toolkit for second- and third-order differential
//! subordination into the exponential starlike class `S*_e`.
//!
//! - [`series`]: truncated power series arithmetic.
//! - [`domains`]: the target domains, their boundaries and membership tests.
//! - [`admissibility`]: boundary data for `q(z) = e^z`, theorem thresholds and
//!   grid certification of the admissibility exclusion.
//! - [`subordination`]: sampled subordination tests, counterexample search and
//!   the corollary identities.
//! - [`figure`]: boundary samples for plots.

pub mod admissibility;
pub mod domains;
pub mod figure;
pub mod roots;
pub mod series;
pub mod subordination;

/// Complex scalar used throughout.
pub type ComplexValue = num_complex::Complex64;

pub use admissibility::{
    AdmissibilityPoint, BaseQuantities, ExclusionReport, GridSpec, OperatorCoefficients, TheoremId, TheoremSpec,
};
pub use domains::{DomainKind, Membership, TargetDomain};
pub use series::TaylorSeries;
pub use subordination::{ImplicationReport, StarlikeQuantities};
