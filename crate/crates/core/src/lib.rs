//! Exact-arithmetic tooling for rank-4 based rings with two self-dual basis
//! elements: axiom checks, formal codegrees, and the obstructions that cut the
//! two-parameter families down to finitely many candidates.

pub mod arith;
pub mod based_ring;
pub mod center;
pub mod codegree;
pub mod cyclotomic;
pub mod error;
pub mod families;
mod scalar;

pub use arith::cyclo::Cyclo;
pub use arith::poly::{IntMatrix, IntPoly};
pub use arith::quad::{Quad, Sign};
pub use based_ring::FusionRing;
pub use error::{Error, Result};
pub use families::{KParams, RParams};
pub use scalar::Scalar;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;
/// Exact element `a + b sqrt(c)` of a real quadratic field.
pub type QuadVal = Quad<Rational>;
/// Exact element of a cyclotomic field with rational coefficients.
pub type CycloElem = Cyclo<Rational>;
/// Floating-point shadow of [`QuadVal`], used only for diagnostics.
pub type QuadF64 = Quad<f64>;
