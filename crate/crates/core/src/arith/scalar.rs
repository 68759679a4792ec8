use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::quad::QuadElem;
use super::rational::{ceil_rational, floor_rational, Rational};
use super::ArithError;

/// An exact ordered field the geometry can be computed over.
///
/// Method names avoid `add`/`sub`/... so they never collide with the
/// `std::ops` impls that both implementors also carry.
pub trait Scalar: Clone + Debug + Display + PartialEq + Eq + Ord + Send + Sync + 'static {
    /// Embeds a rational into the same field as `self`.
    fn embed(&self, r: &Rational) -> Self;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn try_div(&self, other: &Self) -> Result<Self, ArithError>;

    fn sign(&self) -> i8;
    fn floor(&self) -> BigInt;
    fn ceil(&self) -> BigInt;

    /// `(rational part, coefficient of √d)`; the second entry is zero for
    /// rationals.
    fn parts(&self) -> (Rational, Rational);

    fn field_name(&self) -> String;

    fn to_f64(&self) -> f64;

    /// Parses the exact string form produced by `Display`.
    fn parse_exact(s: &str) -> Result<Self, ArithError>;

    fn to_rational(&self) -> Option<Rational> {
        let (r, i) = self.parts();
        i.is_zero().then_some(r)
    }

    fn zero_like(&self) -> Self {
        self.embed(&Rational::zero())
    }

    fn scale(&self, r: &Rational) -> Self {
        self.times(&self.embed(r))
    }

    fn is_zero_value(&self) -> bool {
        self.sign() == 0
    }

    fn abs_value(&self) -> Self {
        if self.sign() < 0 {
            self.negated()
        } else {
            self.clone()
        }
    }
}

impl Scalar for Rational {
    fn embed(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_div(&self, other: &Self) -> Result<Self, ArithError> {
        if other.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(self / other)
        }
    }
    fn sign(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn floor(&self) -> BigInt {
        floor_rational(self)
    }
    fn ceil(&self) -> BigInt {
        ceil_rational(self)
    }
    fn parts(&self) -> (Rational, Rational) {
        (self.clone(), Rational::zero())
    }
    fn field_name(&self) -> String {
        "Q".to_string()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn parse_exact(s: &str) -> Result<Self, ArithError> {
        super::rational::parse_rational(s.trim())
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Scalar for QuadElem {
    fn embed(&self, r: &Rational) -> Self {
        self.with_parts(r.clone(), Rational::zero())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn try_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_div(other)
    }
    fn sign(&self) -> i8 {
        QuadElem::sign(self)
    }
    fn floor(&self) -> BigInt {
        QuadElem::floor(self)
    }
    fn ceil(&self) -> BigInt {
        QuadElem::ceil(self)
    }
    fn parts(&self) -> (Rational, Rational) {
        (self.rat_part().clone(), self.irr_part().clone())
    }
    fn field_name(&self) -> String {
        format!("Q(sqrt({}))", self.discriminant())
    }
    fn to_f64(&self) -> f64 {
        QuadElem::to_f64(self)
    }
    fn parse_exact(s: &str) -> Result<Self, ArithError> {
        s.parse()
    }
    fn scale(&self, r: &Rational) -> Self {
        QuadElem::scale(self, r)
    }
}
