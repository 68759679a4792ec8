//! Exact scalar arithmetic.
//!
//! Two scalar fields are supported: the rationals (backed by
//! [`num_rational::BigRational`]) and real quadratic fields `Q(√d)`
//! represented symbolically by [`QuadElem`]. Nothing in this crate ever
//! branches on a floating point value; every comparison goes through an
//! exact sign computation.

mod quad;
mod rational;
mod scalar;

pub use quad::{isqrt, quad_floor, quad_sign, QuadElem};
pub use rational::{ceil_rational, floor_rational, parse_rational, rat, rat_int, Rational};
pub use scalar::Scalar;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched discriminants: sqrt({0}) vs sqrt({1})")]
    MismatchedDiscriminant(BigInt, BigInt),
    #[error("invalid discriminant {0}: must be a positive non-square integer")]
    InvalidDiscriminant(BigInt),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}
