use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{Rational, Scalar};
use crate::geometry::{ConvexPolygon, Point2, Triangle};

/// Machine or big integer used by the rational column scan.
trait Word: Integer + Signed + Clone {
    fn from_big(b: &BigInt) -> Self;
    fn into_big(self) -> BigInt;
}

impl Word for i64 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i64().expect("range checked before dispatch")
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Word for i128 {
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("range checked before dispatch")
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Word for BigInt {
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Half-plane `a·y ≥ b·x + c·t` (lower) or `a·y ≤ b·x + c·t` (upper), with
/// `a > 0`.
#[derive(Clone, Debug)]
struct HalfPlane {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// Counter for a rational convex polygon, working on the integer polygon
/// `den · P` so that every column bound is a single integer division.
#[derive(Clone, Debug)]
pub struct RationalCounter {
    den: BigInt,
    x_min: BigInt,
    x_max: BigInt,
    y_span: BigInt,
    lower: Vec<HalfPlane>,
    upper: Vec<HalfPlane>,
}

impl RationalCounter {
    pub fn new(t: &Triangle<Rational>) -> Self {
        Self::from_vertices(&t.points())
    }

    pub fn from_polygon(p: &ConvexPolygon<Rational>) -> Self {
        Self::from_vertices(p.vertices())
    }

    /// `vertices` must be counterclockwise and convex.
    fn from_vertices(vertices: &[Point2<Rational>]) -> Self {
        let den = vertices
            .iter()
            .flat_map(|p| [p.x.denom(), p.y.denom()])
            .fold(BigInt::from(1), |acc, d| acc.lcm(d));
        let scaled = |p: &Point2<Rational>| -> (BigInt, BigInt) {
            let d = Rational::from_integer(den.clone());
            ((&p.x * &d).to_integer(), (&p.y * &d).to_integer())
        };
        let mut pts: Vec<(BigInt, BigInt)> = vertices.iter().map(scaled).collect();
        let span = |v: &[(BigInt, BigInt)], f: fn(&(BigInt, BigInt)) -> &BigInt| {
            let max = v.iter().map(f).max().expect("nonempty").clone();
            let min = v.iter().map(f).min().expect("nonempty").clone();
            max - min
        };
        // Scanning the shorter axis means fewer columns; transposing
        // reverses orientation, so the vertex order is reversed too.
        if span(&pts, |p| &p.1) < span(&pts, |p| &p.0) {
            for p in pts.iter_mut() {
                std::mem::swap(&mut p.0, &mut p.1);
            }
            pts.reverse();
        }
        let n = pts.len();
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for i in 0..n {
            let (px, py) = &pts[i];
            let (qx, qy) = &pts[(i + 1) % n];
            let (ex, ey) = (qx - px, qy - py);
            if ex.is_zero() {
                continue;
            }
            let c = &ex * py - &ey * px;
            let (mut a, mut b) = (&ex * &den, &ey * &den);
            let mut c = c;
            let g = a.gcd(&b).gcd(&c);
            a /= &g;
            b /= &g;
            c /= &g;
            if a.is_positive() {
                lower.push(HalfPlane { a, b, c });
            } else {
                upper.push(HalfPlane {
                    a: -a,
                    b: -b,
                    c: -c,
                });
            }
        }
        let x_min = pts.iter().map(|p| &p.0).min().expect("nonempty").clone();
        let x_max = pts.iter().map(|p| &p.0).max().expect("nonempty").clone();
        let y_span = span(&pts, |p| &p.1);
        RationalCounter {
            den,
            x_min,
            x_max,
            y_span,
            lower,
            upper,
        }
    }

    pub fn count(&self, t: u64) -> BigInt {
        let tb = BigInt::from(t);
        let x_lo = (&tb * &self.x_min).div_ceil(&self.den);
        let x_hi = (&tb * &self.x_max).div_floor(&self.den);
        if x_lo > x_hi {
            return BigInt::zero();
        }
        let x_abs = x_lo.abs().max(x_hi.abs());
        let planes = self.lower.iter().chain(&self.upper);
        let bound: BigInt = planes
            .map(|h| h.a.abs().max(h.b.abs() * &x_abs + h.c.abs() * &tb))
            .max()
            .unwrap_or_default();
        let cols = &x_hi - &x_lo + 1;
        let rows: BigInt = &tb * &self.y_span / &self.den + 2;
        let total: BigInt = cols * rows;
        let fits = |bits: u64| bound.bits() < bits && total.bits() < bits;
        if fits(62) {
            self.scan::<i64>(&tb, &x_lo, &x_hi)
        } else if fits(126) {
            self.scan::<i128>(&tb, &x_lo, &x_hi)
        } else {
            self.scan::<BigInt>(&tb, &x_lo, &x_hi)
        }
    }

    fn scan<W: Word>(&self, t: &BigInt, x_lo: &BigInt, x_hi: &BigInt) -> BigInt {
        let prep = |hs: &[HalfPlane]| -> Vec<(W, W, W)> {
            hs.iter()
                .map(|h| {
                    let start = &h.b * x_lo + &h.c * t;
                    (W::from_big(&h.a), W::from_big(&h.b), W::from_big(&start))
                })
                .collect()
        };
        let mut lower = prep(&self.lower);
        let mut upper = prep(&self.upper);
        let one = W::one();
        let mut total = W::zero();
        let mut x = W::from_big(x_lo);
        let end = W::from_big(x_hi);
        while x <= end {
            let lo = lower
                .iter()
                .map(|(a, _, n)| n.div_ceil(a))
                .max()
                .expect("a polygon has a lower edge");
            let hi = upper
                .iter()
                .map(|(a, _, n)| n.div_floor(a))
                .min()
                .expect("a polygon has an upper edge");
            if hi >= lo {
                total = total + (hi - lo) + one.clone();
            }
            for (_, b, n) in lower.iter_mut().chain(upper.iter_mut()) {
                *n = n.clone() + b.clone();
            }
            x = x + one.clone();
        }
        total.into_big()
    }
}

/// Counter for a convex polygon over any exact field, bounding each column
/// with the field's own floor and ceiling.
#[derive(Clone, Debug)]
pub struct FieldCounter<S> {
    points: Vec<Point2<S>>,
}

impl<S: Scalar> FieldCounter<S> {
    pub fn new(t: &Triangle<S>) -> Self {
        FieldCounter {
            points: t.points().to_vec(),
        }
    }

    pub fn from_polygon(p: &ConvexPolygon<S>) -> Self {
        FieldCounter {
            points: p.vertices().to_vec(),
        }
    }

    pub fn count(&self, t: u64) -> BigInt {
        if t == 0 {
            return BigInt::from(1);
        }
        let k = Rational::from_integer(BigInt::from(t));
        let pts: Vec<Point2<S>> = self.points.iter().map(|p| p.scale(&k)).collect();
        let x_lo = pts.iter().map(|p| p.x.ceil()).min().expect("nonempty");
        let x_hi = pts.iter().map(|p| p.x.floor()).max().expect("nonempty");
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let n = pts.len();
        for i in 0..n {
            let p = &pts[i];
            let q = &pts[(i + 1) % n];
            let e = q.minus(p);
            if e.x.is_zero_value() {
                continue;
            }
            let slope = e.y.try_div(&e.x).expect("nonzero run");
            if e.x.sign() > 0 {
                lower.push((p.clone(), slope));
            } else {
                upper.push((p.clone(), slope));
            }
        }
        let bound = |(p, slope): &(Point2<S>, S), x: &S| p.y.plus(&slope.times(&x.minus(&p.x)));
        let mut total = BigInt::zero();
        let mut xi = x_lo;
        while xi <= x_hi {
            let x = pts[0].x.embed(&Rational::from_integer(xi.clone()));
            let lo = lower
                .iter()
                .map(|h| bound(h, &x).ceil())
                .max()
                .expect("lower edge");
            let hi = upper
                .iter()
                .map(|h| bound(h, &x).floor())
                .min()
                .expect("upper edge");
            if hi >= lo {
                total += hi - lo + 1;
            }
            xi += 1;
        }
        total
    }
}

/// Lattice-point counter for the dilates of one triangle. Triangles whose
/// coordinates are all rational take the integer column scan.
#[derive(Clone, Debug)]
pub enum LatticeCounter<S> {
    Rational(RationalCounter),
    Field(FieldCounter<S>),
}

impl<S: Scalar> LatticeCounter<S> {
    pub fn new(t: &Triangle<S>) -> Self {
        match t.to_rational() {
            Some(r) => LatticeCounter::Rational(RationalCounter::new(&r)),
            None => LatticeCounter::Field(FieldCounter::new(t)),
        }
    }

    /// `#(t·T ∩ Z²)` for the closed triangle.
    pub fn count(&self, t: u64) -> BigInt {
        match self {
            LatticeCounter::Rational(c) => c.count(t),
            LatticeCounter::Field(c) => c.count(t),
        }
    }
}

impl<S: Scalar> LatticeCounter<S> {
    pub fn for_polygon(p: &ConvexPolygon<S>) -> Self {
        let rational: Option<Vec<Point2<Rational>>> = p
            .vertices()
            .iter()
            .map(|v| Some(Point2::new(v.x.to_rational()?, v.y.to_rational()?)))
            .collect();
        match rational {
            Some(vs) => LatticeCounter::Rational(RationalCounter::from_vertices(&vs)),
            None => LatticeCounter::Field(FieldCounter::from_polygon(p)),
        }
    }
}

pub fn count_lattice_points<S: Scalar>(t: &Triangle<S>, k: u64) -> BigInt {
    LatticeCounter::new(t).count(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, QuadElem};

    fn tri(v: [(i64, i64, i64, i64); 3]) -> Triangle<Rational> {
        let [a, b, c] = v.map(|(xn, xd, yn, yd)| Point2::new(rat(xn, xd), rat(yn, yd)));
        Triangle::from_points(a, b, c).unwrap()
    }

    fn brute(t: &Triangle<Rational>, k: u64) -> u64 {
        if k == 0 {
            return 1;
        }
        let kk = rat(k as i64, 1);
        let s = t.dilate(&kk).unwrap();
        let xs: Vec<_> = s.points().iter().map(|p| p.x.clone()).collect();
        let ys: Vec<_> = s.points().iter().map(|p| p.y.clone()).collect();
        let (x0, x1) = (
            Scalar::floor(xs.iter().min().unwrap()),
            Scalar::ceil(xs.iter().max().unwrap()),
        );
        let (y0, y1) = (
            Scalar::floor(ys.iter().min().unwrap()),
            Scalar::ceil(ys.iter().max().unwrap()),
        );
        let mut n = 0;
        let mut x = x0.clone();
        while x <= x1 {
            let mut y = y0.clone();
            while y <= y1 {
                let p = Point2::new(
                    Rational::from_integer(x.clone()),
                    Rational::from_integer(y.clone()),
                );
                if s.contains(&p) {
                    n += 1;
                }
                y += 1;
            }
            x += 1;
        }
        n
    }

    #[test]
    fn unit_simplex_counts() {
        let t = tri([(0, 1, 0, 1), (1, 1, 0, 1), (0, 1, 1, 1)]);
        let c = LatticeCounter::new(&t);
        for k in 0..10u64 {
            assert_eq!(c.count(k), BigInt::from((k + 1) * (k + 2) / 2));
        }
    }

    #[test]
    fn two_position_proof_triangle() {
        let t = tri([(0, 1, 0, 1), (1, 2, 2, 1), (1, 2, 0, 1)]);
        let got: Vec<BigInt> = (1..=3).map(|k| count_lattice_points(&t, k)).collect();
        assert_eq!(got, [1, 6, 6].map(BigInt::from));
    }

    #[test]
    fn vertical_and_negative_edges() {
        let shapes = [
            tri([(-3, 2, 1, 3), (5, 4, -7, 3), (-3, 2, 5, 2)]),
            tri([(1, 2, 1, 3), (1, 3, 1, 2), (1, 8, 1, 8)]),
            tri([(-1, 3, -1, 3), (-1, 3, 2, 3), (2, 3, -1, 3)]),
            tri([(0, 1, 0, 1), (7, 1, 1, 5), (1, 7, 9, 1)]),
        ];
        for t in &shapes {
            let c = LatticeCounter::new(t);
            let f = FieldCounter::new(t);
            for k in 0..9 {
                assert_eq!(c.count(k), BigInt::from(brute(t, k)), "{t:?} at {k}");
                assert_eq!(f.count(k), BigInt::from(brute(t, k)));
            }
        }
    }

    #[test]
    fn big_integer_fallback_agrees() {
        let t = tri([(0, 1, 0, 1), (1, 1, 0, 1), (0, 1, 1, 1)]);
        let c = RationalCounter::new(&t);
        let k: u64 = 3_000_000_000;
        let x_lo = BigInt::zero();
        let x_hi = BigInt::from(5);
        let small = c.scan::<i128>(&BigInt::from(k), &x_lo, &x_hi);
        let big = c.scan::<BigInt>(&BigInt::from(k), &x_lo, &x_hi);
        assert_eq!(small, big);
    }

    #[test]
    fn golden_limit_triangle_at_one() {
        let tau2: QuadElem = "3/2 + 1/2*sqrt(5)".parse().unwrap();
        let z = tau2.zero_like();
        let t = Triangle::from_points(
            Point2::new(z.clone(), z.clone()),
            Point2::new(tau2.clone(), z.clone()),
            Point2::new(z.clone(), tau2.recip().unwrap()),
        )
        .unwrap();
        assert_eq!(count_lattice_points(&t, 0), BigInt::from(1));
        assert_eq!(count_lattice_points(&t, 1), BigInt::from(3));
    }
}
