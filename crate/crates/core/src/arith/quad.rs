use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{floor_rational, parse_rational, Rational};
use super::ArithError;

/// Element `rat + irr·√d` of the real quadratic field `Q(√d)`.
///
/// `d` is a positive integer that is not a perfect square, so the pair
/// `(rat, irr)` is unique for a given value. Operands of a binary operation
/// must share the same `d`; the operator impls panic on a mismatch and the
/// `checked_*` methods report it as [`ArithError::MismatchedDiscriminant`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    rat: Rational,
    irr: Rational,
    d: BigInt,
}

pub fn isqrt(n: &BigInt) -> BigInt {
    Roots::sqrt(n)
}

fn check_discriminant(d: &BigInt) -> Result<(), ArithError> {
    if !d.is_positive() {
        return Err(ArithError::InvalidDiscriminant(d.clone()));
    }
    let r = isqrt(d);
    if &(&r * &r) == d {
        return Err(ArithError::InvalidDiscriminant(d.clone()));
    }
    Ok(())
}

impl QuadElem {
    pub fn new(rat: Rational, irr: Rational, d: impl Into<BigInt>) -> Result<Self, ArithError> {
        let d = d.into();
        check_discriminant(&d)?;
        Ok(QuadElem { rat, irr, d })
    }

    pub fn from_rational(r: Rational, d: impl Into<BigInt>) -> Result<Self, ArithError> {
        Self::new(r, Rational::zero(), d)
    }

    /// `√d` itself.
    pub fn sqrt_d(d: impl Into<BigInt>) -> Result<Self, ArithError> {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    /// Same-field constructor; `self` only supplies the discriminant.
    pub fn with_parts(&self, rat: Rational, irr: Rational) -> Self {
        QuadElem {
            rat,
            irr,
            d: self.d.clone(),
        }
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn irr_part(&self) -> &Rational {
        &self.irr
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    pub fn conjugate(&self) -> Self {
        self.with_parts(self.rat.clone(), -self.irr.clone())
    }

    /// Field norm `rat² − irr²·d`.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - &self.irr * &self.irr * Rational::from_integer(self.d.clone())
    }

    pub fn sign(&self) -> i8 {
        quad_sign(self)
    }

    pub fn floor(&self) -> BigInt {
        quad_floor(self)
    }

    pub fn ceil(&self) -> BigInt {
        -quad_floor(&-self)
    }

    fn same_field(&self, other: &Self) -> Result<(), ArithError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(ArithError::MismatchedDiscriminant(
                self.d.clone(),
                other.d.clone(),
            ))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        Ok(self.with_parts(&self.rat + &other.rat, &self.irr + &other.irr))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        Ok(self.with_parts(&self.rat - &other.rat, &self.irr - &other.irr))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        let d = Rational::from_integer(self.d.clone());
        let rat = &self.rat * &other.rat + &self.irr * &other.irr * d;
        let irr = &self.rat * &other.irr + &self.irr * &other.rat;
        Ok(self.with_parts(rat, irr))
    }

    /// Division by rationalizing with the conjugate of the divisor.
    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        let norm = other.norm();
        if norm.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let num = self.checked_mul(&other.conjugate())?;
        Ok(self.with_parts(num.rat / &norm, num.irr / norm))
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        self.with_parts(Rational::one(), Rational::zero())
            .checked_div(self)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.with_parts(&self.rat * r, &self.irr * r)
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        self.with_parts(&self.rat + r, self.irr.clone())
    }

    /// Approximate value for human-readable diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        self.rat.to_f64().unwrap_or(f64::NAN) + self.irr.to_f64().unwrap_or(f64::NAN) * d.sqrt()
    }
}

/// Exact sign of `rat + irr·√d`.
pub fn quad_sign(x: &QuadElem) -> i8 {
    let sr = sign_of(&x.rat);
    let si = sign_of(&x.irr);
    if si == 0 {
        return sr;
    }
    if sr == 0 || sr == si {
        return si;
    }
    // Mixed signs: the larger magnitude wins, compared through squares.
    let rat_sq = &x.rat * &x.rat;
    let irr_sq = &x.irr * &x.irr * Rational::from_integer(x.d.clone());
    match rat_sq.cmp(&irr_sq) {
        Ordering::Greater => sr,
        Ordering::Less => si,
        Ordering::Equal => unreachable!("d is not a perfect square"),
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Greatest integer `n` with `x − n ≥ 0`.
///
/// A rational bracket of `√d` at scale `2^k` (with `k ≥ 128`, raised so
/// that `|irr| < 2^k`) gives a candidate within one unit of the answer;
/// at most two exact sign tests then settle it.
pub fn quad_floor(x: &QuadElem) -> BigInt {
    if x.irr.is_zero() {
        return floor_rational(&x.rat);
    }
    let irr_mag = x.irr.abs();
    let irr_floor: BigInt = floor_rational(&irr_mag);
    let irr_bits: u64 = irr_floor.bits() + 2;
    let shift = 128u64.max(irr_bits);
    let scale = BigInt::one() << shift;
    let root = isqrt(&(&x.d * &scale * &scale));
    let approx = &x.rat + &x.irr * Rational::new(root, scale);
    let mut n: BigInt = floor_rational(&approx);
    while quad_sign(&x.add_rational(&Rational::from_integer(-n.clone()))) < 0 {
        n -= 1;
    }
    while quad_sign(&x.add_rational(&Rational::from_integer(-(&n + BigInt::one())))) >= 0 {
        n += 1;
    }
    n
}

impl PartialOrd for QuadElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadElem {
    /// Panics if the discriminants differ.
    fn cmp(&self, other: &Self) -> Ordering {
        match quad_sign(&(self - other)) {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a QuadElem> for &'a QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: &'a QuadElem) -> QuadElem {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("QuadElem::{}: {}", stringify!($method), e),
                }
            }
        }
        impl $trait<QuadElem> for QuadElem {
            type Output = QuadElem;
            fn $method(self, rhs: QuadElem) -> QuadElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        self.with_parts(-self.rat.clone(), -self.irr.clone())
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_negative() {
            write!(f, "{} - {}*sqrt({})", self.rat, -&self.irr, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.rat, self.irr, self.d)
        }
    }
}

impl FromStr for QuadElem {
    type Err = ArithError;

    /// Accepts `"p/q + r/s*sqrt(d)"`, with either `+` or `-` between the
    /// parts and optional whitespace.
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let err = |reason: &str| ArithError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_suffix(')')
            .ok_or_else(|| err("expected trailing ')'"))?;
        let (head, d) = body
            .rsplit_once("*sqrt(")
            .ok_or_else(|| err("expected '*sqrt(d)'"))?;
        let d: BigInt = d.parse().map_err(|_| err("bad discriminant"))?;
        let bytes = head.as_bytes();
        let split = (1..bytes.len())
            .find(|&i| matches!(bytes[i], b'+' | b'-') && bytes[i - 1] != b'/')
            .ok_or_else(|| err("expected 'rat + irr*sqrt(d)'"))?;
        let rat = parse_rational(&head[..split])?;
        let irr_str = &head[split..];
        let irr_str = irr_str.strip_prefix('+').unwrap_or(irr_str);
        let irr = parse_rational(irr_str)?;
        QuadElem::new(rat, irr, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(a: (i64, i64), b: (i64, i64), d: i64) -> QuadElem {
        QuadElem::new(rat(a.0, a.1), rat(b.0, b.1), d).unwrap()
    }

    #[test]
    fn sign_examples() {
        assert_eq!(quad_sign(&q((0, 1), (0, 1), 5)), 0);
        assert_eq!(quad_sign(&q((-3, 2), (1, 1), 5)), 1);
        assert_eq!(quad_sign(&q((3, 1), (-1, 1), 5)), 1);
        assert_eq!(quad_sign(&q((-3, 1), (1, 1), 5)), -1);
        assert_eq!(quad_sign(&q((2, 1), (-1, 1), 5)), -1);
    }

    #[test]
    fn floor_examples() {
        assert_eq!(quad_floor(&q((3, 2), (1, 2), 5)), BigInt::from(2));
        assert_eq!(quad_floor(&q((7, 1), (0, 1), 5)), BigInt::from(7));
        assert_eq!(quad_floor(&q((3, 2), (-1, 2), 5)), BigInt::from(0));
        assert_eq!(quad_floor(&q((0, 1), (-1, 1), 5)), BigInt::from(-3));
        assert_eq!(q((0, 1), (-1, 1), 5).ceil(), BigInt::from(-2));
    }

    #[test]
    fn floor_with_huge_irrational_coefficient() {
        let big = BigInt::from(10).pow(60);
        let x = QuadElem::new(Rational::zero(), Rational::from_integer(big.clone()), 2).unwrap();
        let n = quad_floor(&x);
        // n ≤ 10^60·√2 < n + 1  ⇔  n² ≤ 2·10^120 < (n+1)²
        let target = &big * &big * 2;
        assert!(&n * &n <= target);
        assert!((&n + 1) * (&n + 1) > target);
    }

    #[test]
    fn conjugate_product_is_one_minus_d() {
        let a = q((1, 1), (1, 1), 5);
        let b = q((1, 1), (-1, 1), 5);
        assert_eq!(&a * &b, q((-4, 1), (0, 1), 5));
    }

    #[test]
    fn reciprocal_of_golden_square() {
        let tau2 = q((3, 2), (1, 2), 5);
        assert_eq!(tau2.recip().unwrap(), q((3, 2), (-1, 2), 5));
    }

    #[test]
    fn division_by_zero_and_mismatch_are_errors() {
        let zero = q((0, 1), (0, 1), 5);
        let one = q((1, 1), (0, 1), 5);
        assert_eq!(one.checked_div(&zero), Err(ArithError::DivisionByZero));
        let other = q((1, 1), (0, 1), 2);
        assert!(matches!(
            one.checked_add(&other),
            Err(ArithError::MismatchedDiscriminant(_, _))
        ));
    }

    #[test]
    fn square_discriminant_rejected() {
        assert!(QuadElem::sqrt_d(9).is_err());
        assert!(QuadElem::sqrt_d(0).is_err());
        assert!(QuadElem::sqrt_d(32).is_ok());
    }

    #[test]
    fn parse_and_print() {
        let x = q((-3, 2), (-1, 7), 77);
        let s = x.to_string();
        assert_eq!(s, "-3/2 - 1/7*sqrt(77)");
        assert_eq!(s.parse::<QuadElem>().unwrap(), x);
        assert_eq!(
            "3/2 - 1/2*sqrt(5)".parse::<QuadElem>().unwrap(),
            q((3, 2), (-1, 2), 5)
        );
        assert_eq!(
            "-1+2*sqrt(5)".parse::<QuadElem>().unwrap(),
            q((-1, 1), (2, 1), 5)
        );
        assert!("1 + 2*sqrt(4)".parse::<QuadElem>().is_err());
        assert!("1 + 2*sqr(5)".parse::<QuadElem>().is_err());
    }
}
