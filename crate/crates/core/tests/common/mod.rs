//! Brute-force oracles shared by the integration suites. They share no code
//! with the counting engine beyond the number types: every lattice point of
//! a bounding box is tested against the three edge inequalities.

#![allow(dead_code)]

use markov_ehrhart::arith::{QuadElem, Rational, Scalar};
use markov_ehrhart::geometry::Triangle;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A rational triangle scaled by the lcm `d` of its coordinate denominators,
/// so that `Δ = P / d` with integer `P`.
#[derive(Clone, Debug)]
pub struct ScaledTriangle {
    pub d: i128,
    pub pts: [(i128, i128); 3],
}

impl ScaledTriangle {
    pub fn new(t: &Triangle<Rational>) -> Self {
        let pts = t.points();
        let mut d = BigInt::one();
        for p in &pts {
            d = d.lcm(p.x.denom()).lcm(p.y.denom());
        }
        let scale = |r: &Rational| {
            (r * Rational::from_integer(d.clone()))
                .to_integer()
                .to_i128()
                .unwrap()
        };
        ScaledTriangle {
            d: d.to_i128().unwrap(),
            pts: [0, 1, 2].map(|i| (scale(&pts[i].x), scale(&pts[i].y))),
        }
    }

    pub fn contains(&self, t: i128, x: i128, y: i128) -> bool {
        let p = self.pts.map(|(a, b)| (a * t, b * t));
        let (x, y) = (x * self.d, y * self.d);
        let cross =
            |a: (i128, i128), b: (i128, i128)| (b.0 - a.0) * (y - a.1) - (b.1 - a.1) * (x - a.0);
        let orient = (p[1].0 - p[0].0) * (p[2].1 - p[0].1) - (p[1].1 - p[0].1) * (p[2].0 - p[0].0);
        let s = orient.signum();
        (0..3).all(|i| cross(p[i], p[(i + 1) % 3]) * s >= 0)
    }

    fn bbox(&self, t: i128) -> (i128, i128, i128, i128) {
        let xs = self.pts.map(|p| p.0 * t);
        let ys = self.pts.map(|p| p.1 * t);
        let lo = |v: [i128; 3]| v.iter().min().unwrap().div_euclid(self.d);
        let hi = |v: [i128; 3]| -(-v.iter().max().unwrap()).div_euclid(self.d);
        (lo(xs), hi(xs), lo(ys), hi(ys))
    }

    /// Column by column: in column `x` each edge inequality is linear in `y`
    /// and bounds it from one side, and every integer `y` between the bounds
    /// is a point of `tΔ`.
    pub fn count(&self, t: u64) -> u64 {
        if t == 0 {
            return 1;
        }
        let t = t as i128;
        let p = self.pts.map(|(a, b)| (a * t, b * t));
        let orient = (p[1].0 - p[0].0) * (p[2].1 - p[0].1) - (p[1].1 - p[0].1) * (p[2].0 - p[0].0);
        let s = orient.signum();
        let (x0, x1, _, _) = self.bbox(t);
        let mut n = 0u64;
        for x in x0..=x1 {
            let (mut lo, mut hi) = (i128::MIN, i128::MAX);
            let mut empty = false;
            for i in 0..3 {
                let (a, b) = (p[i], p[(i + 1) % 3]);
                // s·[(bx − ax)(d·y − ay) − (by − ay)(d·x − ax)] ≥ 0
                let coef = s * (b.0 - a.0) * self.d;
                let cst = s * (-(b.0 - a.0) * a.1 - (b.1 - a.1) * (x * self.d - a.0));
                if coef > 0 {
                    lo = lo.max(-(cst.div_euclid(coef)));
                } else if coef < 0 {
                    hi = hi.min(cst.div_euclid(-coef));
                } else if cst < 0 {
                    empty = true;
                }
            }
            if !empty && hi >= lo {
                n += (hi - lo + 1) as u64;
            }
        }
        n
    }

    /// Point-by-point count over the bounding box.
    pub fn count_pointwise(&self, t: u64) -> u64 {
        let t = t as i128;
        let (x0, x1, y0, y1) = self.bbox(t);
        let mut n = 0;
        for x in x0..=x1 {
            for y in y0..=y1 {
                if self.contains(t, x, y) {
                    n += 1;
                }
            }
        }
        n
    }

    /// Points of `t·φ(Δ)` where `φ` shears `u ↦ u + det(v, u)·v` on the side
    /// `det(u, v) ≥ 0` and fixes the other side; counted by pulling each
    /// candidate point back through the inverse map.
    pub fn count_half_shear(&self, t: u64, v: (i128, i128)) -> u64 {
        let t = t as i128;
        let (x0, x1, y0, y1) = self.bbox(t);
        let det_v = |x: i128, y: i128| v.0 * y - v.1 * x;
        let mut corners = vec![(x0, y0), (x0, y1), (x1, y0), (x1, y1)];
        corners.extend(corners.clone().into_iter().map(|(x, y)| {
            let k = det_v(x, y);
            (x + k * v.0, y + k * v.1)
        }));
        let (cx0, cx1) = (
            corners.iter().map(|c| c.0).min().unwrap(),
            corners.iter().map(|c| c.0).max().unwrap(),
        );
        let (cy0, cy1) = (
            corners.iter().map(|c| c.1).min().unwrap(),
            corners.iter().map(|c| c.1).max().unwrap(),
        );
        let mut n = 0;
        for x in cx0..=cx1 {
            for y in cy0..=cy1 {
                let side = x * v.1 - y * v.0;
                let (px, py) = if side >= 0 {
                    let k = det_v(x, y);
                    (x - k * v.0, y - k * v.1)
                } else {
                    (x, y)
                };
                if self.contains(t, px, py) {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn counts(&self, t_max: u64) -> Vec<u64> {
        (0..=t_max).map(|t| self.count(t)).collect()
    }
}

/// Whether the values at `t ≡ r (mod period)` lie on one quadratic for
/// every residue `r`, judged by constant second differences.
pub fn fits_period(values: &[u64], period: usize) -> bool {
    (0..period).all(|r| {
        let seq: Vec<i128> = values
            .iter()
            .skip(r)
            .step_by(period)
            .map(|&v| v as i128)
            .collect();
        seq.windows(3)
            .map(|w| w[2] - 2 * w[1] + w[0])
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| w[0] == w[1])
    })
}

/// Minimal Ehrhart period of a rational triangle from brute-force counts of
/// the dilates `0..3·den`. Each residue class mod `den` carries one
/// quadratic, fixed by its three samples, so a fit on this range is exact.
pub fn minimal_period(t: &Triangle<Rational>) -> u64 {
    let s = ScaledTriangle::new(t);
    let den = s.d as u64;
    let values: Vec<u64> = (0..3 * den).map(|k| s.count(k)).collect();
    (1..=den)
        .filter(|p| den % p == 0)
        .find(|&p| fits_period(&values, p as usize))
        .expect("the denominator is always a period")
}

/// Exact sign of `r + s·√d`.
pub fn quad_sign(x: &QuadElem) -> i32 {
    let (r, s) = x.parts();
    let d = Rational::from_integer(x.discriminant().clone());
    let sr = if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    };
    let ss = if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    };
    if sr == ss || ss == 0 {
        return sr;
    }
    if sr == 0 {
        return ss;
    }
    let lhs = &r * &r;
    let rhs = &s * &s * d;
    if lhs > rhs {
        sr
    } else if lhs < rhs {
        ss
    } else {
        0
    }
}

/// Brute-force count of `t·Δ ∩ Z²` for a triangle over a quadratic field.
pub fn quad_count(tri: &Triangle<QuadElem>, t: u64) -> u64 {
    if t == 0 {
        return 1;
    }
    let tq = Rational::from_integer(BigInt::from(t));
    let pts = tri.points().map(|p| (p.x.scale(&tq), p.y.scale(&tq)));
    let xs: Vec<f64> = pts.iter().map(|p| p.0.to_f64()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1.to_f64()).collect();
    let lo = |v: &[f64]| v.iter().cloned().fold(f64::INFINITY, f64::min).floor() as i64 - 1;
    let hi = |v: &[f64]| v.iter().cloned().fold(f64::NEG_INFINITY, f64::max).ceil() as i64 + 1;
    let cross = |a: &(QuadElem, QuadElem), b: &(QuadElem, QuadElem), x: &QuadElem, y: &QuadElem| {
        let ex = b.0.minus(&a.0);
        let ey = b.1.minus(&a.1);
        quad_sign(&ex.times(&y.minus(&a.1)).minus(&ey.times(&x.minus(&a.0))))
    };
    let zero = pts[0].0.zero_like();
    let orient = cross(&pts[0], &pts[1], &pts[2].0, &pts[2].1);
    let mut n = 0;
    for x in lo(&xs)..=hi(&xs) {
        let xq = zero.embed(&Rational::from_integer(BigInt::from(x)));
        for y in lo(&ys)..=hi(&ys) {
            let yq = zero.embed(&Rational::from_integer(BigInt::from(y)));
            if (0..3).all(|i| cross(&pts[i], &pts[(i + 1) % 3], &xq, &yq) * orient >= 0) {
                n += 1;
            }
        }
    }
    n
}

/// Affine length `r` of a rational vector `w = r·v` with `v` primitive.
pub fn affine_length(w: (&Rational, &Rational)) -> Rational {
    let l = w.0.denom().lcm(w.1.denom());
    let ix = (w.0 * Rational::from_integer(l.clone())).to_integer();
    let iy = (w.1 * Rational::from_integer(l.clone())).to_integer();
    Rational::new(ix.gcd(&iy), l)
}

fn primitive(w: (&Rational, &Rational)) -> (BigInt, BigInt) {
    let l = w.0.denom().lcm(w.1.denom());
    let ix = (w.0 * Rational::from_integer(l.clone())).to_integer();
    let iy = (w.1 * Rational::from_integer(l.clone())).to_integer();
    let g = ix.gcd(&iy);
    (ix / &g, iy / g)
}

/// `|det|` of the primitive edge vectors leaving vertex `i`.
pub fn angle_determinant(t: &Triangle<Rational>, i: usize) -> BigInt {
    let p = t.points();
    let (a, b, c) = (&p[i], &p[(i + 1) % 3], &p[(i + 2) % 3]);
    let u = primitive((&(&b.x - &a.x), &(&b.y - &a.y)));
    let v = primitive((&(&c.x - &a.x), &(&c.y - &a.y)));
    (u.0 * v.1 - u.1 * v.0).abs()
}

/// The two defining properties of a pseudo-Markov triangle, checked at every
/// vertex: opposite edge length `pᵢ/(pᵢ₊₁pᵢ₊₂)` and angle determinant `pᵢ²`.
pub fn pseudo_markov_conditions(t: &Triangle<Rational>) -> Vec<bool> {
    let p = t.points();
    let labels: Vec<BigInt> = t
        .vertices()
        .iter()
        .map(|v| v.label.clone().unwrap())
        .collect();
    let mut out = Vec::new();
    for i in 0..3 {
        let (b, c) = (&p[(i + 1) % 3], &p[(i + 2) % 3]);
        let len = affine_length((&(&c.x - &b.x), &(&c.y - &b.y)));
        let want = Rational::new(
            labels[i].clone(),
            &labels[(i + 1) % 3] * &labels[(i + 2) % 3],
        );
        out.push(len == want);
        out.push(angle_determinant(t, i) == &labels[i] * &labels[i]);
    }
    out
}

/// Integral barycentre as the intersection of the bisectors `v_ij + v_ik` at
/// vertices 0 and 1.
pub fn barycentre(t: &Triangle<Rational>) -> (Rational, Rational) {
    let p = t.points();
    let dir = |i: usize| {
        let (a, b, c) = (&p[i], &p[(i + 1) % 3], &p[(i + 2) % 3]);
        let u = primitive((&(&b.x - &a.x), &(&b.y - &a.y)));
        let v = primitive((&(&c.x - &a.x), &(&c.y - &a.y)));
        (
            Rational::from_integer(u.0 + v.0),
            Rational::from_integer(u.1 + v.1),
        )
    };
    let (d0, d1) = (dir(0), dir(1));
    // p0 + s·d0 = p1 + r·d1
    let (ex, ey) = (&p[1].x - &p[0].x, &p[1].y - &p[0].y);
    let den = &d0.0 * &d1.1 - &d0.1 * &d1.0;
    let s = (&ex * &d1.1 - &ey * &d1.0) / den;
    (&p[0].x + &s * &d0.0, &p[0].y + &s * &d0.1)
}

/// Odd-indexed Fibonacci numbers `F₁ = 1, F₃ = 2, F₅ = 5, …` up to `limit`.
pub fn fib_odd(limit: u64) -> Vec<u64> {
    let mut fib = vec![0u64, 1];
    while *fib.last().unwrap() <= limit {
        let n = fib.len();
        fib.push(fib[n - 1] + fib[n - 2]);
    }
    fib.iter()
        .skip(1)
        .step_by(2)
        .copied()
        .filter(|&f| f <= limit)
        .collect()
}
