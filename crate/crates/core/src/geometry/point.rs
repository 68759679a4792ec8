use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Rational, Scalar};

/// A point or vector in the plane over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point2<S> {
    pub x: S,
    pub y: S,
}

pub type Vec2<S> = Point2<S>;

impl<S: Scalar> Point2<S> {
    pub fn new(x: S, y: S) -> Self {
        Point2 { x, y }
    }

    pub fn plus(&self, o: &Self) -> Self {
        Point2::new(self.x.plus(&o.x), self.y.plus(&o.y))
    }

    pub fn minus(&self, o: &Self) -> Self {
        Point2::new(self.x.minus(&o.x), self.y.minus(&o.y))
    }

    pub fn times(&self, k: &S) -> Self {
        Point2::new(self.x.times(k), self.y.times(k))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Point2::new(self.x.scale(r), self.y.scale(r))
    }

    pub fn negated(&self) -> Self {
        Point2::new(self.x.negated(), self.y.negated())
    }

    pub fn dot(&self, o: &Self) -> S {
        self.x.times(&o.x).plus(&self.y.times(&o.y))
    }

    pub fn is_origin(&self) -> bool {
        self.x.is_zero_value() && self.y.is_zero_value()
    }

    /// The integer vector `v` embedded in the field of `self`.
    pub fn embed_int(&self, v: &IntVec2) -> Self {
        Point2::new(
            self.x.embed(&Rational::from_integer(v.x.clone())),
            self.x.embed(&Rational::from_integer(v.y.clone())),
        )
    }

    pub fn embed_rational(&self, p: &Point2<Rational>) -> Self {
        Point2::new(self.x.embed(&p.x), self.x.embed(&p.y))
    }
}

impl Point2<Rational> {
    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(
            Rational::from_integer(x.into()),
            Rational::from_integer(y.into()),
        )
    }
}

impl<S: fmt::Display> fmt::Display for Point2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `det(a, b) = a.x·b.y − a.y·b.x`.
pub fn det<S: Scalar>(a: &Point2<S>, b: &Point2<S>) -> S {
    a.x.times(&b.y).minus(&a.y.times(&b.x))
}

/// Integer vector; primitive when its entries are coprime.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntVec2 {
    pub x: BigInt,
    pub y: BigInt,
}

impl IntVec2 {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        IntVec2 {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_primitive(&self) -> bool {
        self.x.gcd(&self.y).is_one()
    }

    /// Positive multiple with coprime entries. Panics on the zero vector.
    pub fn primitive(&self) -> IntVec2 {
        assert!(!self.is_zero(), "zero vector has no primitive direction");
        let g = self.x.gcd(&self.y);
        IntVec2::new(&self.x / &g, &self.y / &g)
    }

    pub fn plus(&self, o: &IntVec2) -> IntVec2 {
        IntVec2::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn negated(&self) -> IntVec2 {
        IntVec2::new(-&self.x, -&self.y)
    }

    pub fn det(&self, o: &IntVec2) -> BigInt {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn to_rational(&self) -> Point2<Rational> {
        Point2::new(
            Rational::from_integer(self.x.clone()),
            Rational::from_integer(self.y.clone()),
        )
    }
}

impl fmt::Display for IntVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Positive multiple of the rational vector `(x, y)` with coprime integer
/// entries, or `None` for the zero vector.
pub fn primitive_direction(x: &Rational, y: &Rational) -> Option<IntVec2> {
    if x.is_zero() && y.is_zero() {
        return None;
    }
    let l = x.denom().lcm(y.denom());
    let xi = x.numer() * (&l / x.denom());
    let yi = y.numer() * (&l / y.denom());
    Some(IntVec2::new(xi, yi).primitive())
}

/// 2×2 integer matrix `[[a, b], [c, d]]` acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl IntMat2 {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        IntMat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        IntMat2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// The shear `u ↦ u + det(v, u)·v`.
    pub fn shear(v: &IntVec2) -> Self {
        let xy = &v.x * &v.y;
        IntMat2 {
            a: BigInt::one() - &xy,
            b: &v.x * &v.x,
            c: -(&v.y * &v.y),
            d: BigInt::one() + xy,
        }
    }

    /// `[[1, −k], [0, 1]]`, relating standard triangles whose companion
    /// lifts differ by `k·p₁`.
    pub fn lift(k: impl Into<BigInt>) -> Self {
        IntMat2::new(1, -k.into(), 0, 1)
    }

    /// The map exchanging which of the two non-distinguished vertices of a
    /// standard triangle with companion `q1` lies on the x-axis.
    pub fn axis_swap(p1: &BigInt, q1: &BigInt) -> Self {
        let qp = q1 * p1;
        IntMat2 {
            a: -(BigInt::one() + &qp),
            b: q1 * q1,
            c: p1 * p1,
            d: BigInt::one() - qp,
        }
    }

    pub fn mul(&self, o: &IntMat2) -> IntMat2 {
        IntMat2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn apply<S: Scalar>(&self, p: &Point2<S>) -> Point2<S> {
        let e = |n: &BigInt| p.x.embed(&Rational::from_integer(n.clone()));
        Point2::new(
            e(&self.a).times(&p.x).plus(&e(&self.b).times(&p.y)),
            e(&self.c).times(&p.x).plus(&e(&self.d).times(&p.y)),
        )
    }

    pub fn apply_int(&self, v: &IntVec2) -> IntVec2 {
        IntVec2::new(
            &self.a * &v.x + &self.b * &v.y,
            &self.c * &v.x + &self.d * &v.y,
        )
    }
}
