use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ArithError;

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

pub fn floor_rational(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil_rational(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

/// Parses `"p/q"` or `"p"`. Leading `+` is accepted, whitespace is not.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let err = |reason: &str| ArithError::Parse {
        input: s.to_string(),
        reason: reason.to_string(),
    };
    let body = s.strip_prefix('+').unwrap_or(s);
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    let r = Rational::new(num, den);
    debug_assert!(is_reduced(&r));
    Ok(r)
}

pub(crate) fn is_reduced(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}
