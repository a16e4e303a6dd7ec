//! Exact base change E/F for GL(n) parameters.
//!
//! Local fields are modelled by their numerical invariants; the tempered
//! duals involved are disjoint unions of circles and symmetric products,
//! and base change acts on coordinates by `z -> z^f`. Everything is
//! computed in exact rational arithmetic.

pub mod error;
pub mod extension_tower;
pub mod gl2_cuspidal;
pub mod iwahori_variety;
pub mod ktheory;
pub mod linalg;
pub mod scalar;
pub mod tempered_gl1;

pub use error::{Error, Result};
pub use scalar::{ExactScalar, Scalar};

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;
/// Gaussian rational `a + b i`.
pub type Gaussian = num_complex::Complex<Rational>;
/// Torus point with Gaussian rational coordinates.
pub type GaussianTorusPoint = iwahori_variety::TorusPoint<Rational>;
/// Symmetric Laurent polynomial with rational coefficients.
pub type RationalInvariantPoly = iwahori_variety::InvariantLaurentPoly<Rational>;
/// Unramified quasicharacter with a Gaussian rational parameter.
pub type GaussianQuasicharacter = tempered_gl1::UnramifiedQuasicharacter<Rational>;
/// Hasse-Herbrand function with rational breakpoints.
pub type RationalPiecewiseLinear = extension_tower::PiecewiseLinearFn<Rational>;
