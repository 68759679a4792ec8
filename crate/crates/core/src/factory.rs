//! Constructors for the distinguished triangles: standard positions of
//! Markov triples, barycentric translates, the rational sequences along a
//! branch and their irrational limits, and the two-parameter family used by
//! the open-problem scan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{QuadElem, Rational, Scalar};
use crate::geometry::{integral_barycentre, GeometryError, Point2, Triangle, Vertex};
use crate::markov::{
    branch_root, branch_walk, companion_residue, lagrange_discriminant, lagrange_number,
    BranchSide, MarkovError, MarkovTriple,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactoryError {
    #[error("q = {q} is not a valid companion lift for {p1} (need q ≡ {expected} mod {p1})")]
    InvalidCompanion {
        q: BigInt,
        p1: BigInt,
        expected: BigInt,
    },
    #[error("gcd({a}, {q}) must be 1")]
    NotCoprime { a: BigInt, q: BigInt },
    #[error("{0} must be a positive integer")]
    NonPositive(&'static str),
    #[error(transparent)]
    Markov(#[from] MarkovError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Which of the two non-apex vertices sits on the positive x-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OnAxis {
    Second,
    Third,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardPositionSpec {
    pub triple: MarkovTriple,
    /// Index of the entry placed at the origin; the other two follow it in
    /// cyclic order as `p₂, p₃`.
    pub apex: usize,
    pub q1: BigInt,
    pub on_axis: OnAxis,
}

impl StandardPositionSpec {
    /// Uses the least positive lift of `3·p₃·p₂⁻¹ mod p₁` and puts `p₂` on
    /// the axis.
    pub fn new(triple: MarkovTriple, apex: usize) -> Self {
        let r = triple.rotated_to(apex);
        let [p1, p2, p3] = r.entries();
        let res = companion_residue(p1, p2, p3);
        let q1 = if res.is_zero() { p1.clone() } else { res };
        StandardPositionSpec {
            triple,
            apex: apex % 3,
            q1,
            on_axis: OnAxis::Second,
        }
    }

    pub fn with_lift(mut self, q1: impl Into<BigInt>) -> Self {
        self.q1 = q1.into();
        self
    }

    pub fn with_axis(mut self, on_axis: OnAxis) -> Self {
        self.on_axis = on_axis;
        self
    }

    pub fn ordered(&self) -> [BigInt; 3] {
        self.triple.rotated_to(self.apex).entries().clone()
    }
}

fn fr(n: &BigInt, d: &BigInt) -> Rational {
    Rational::new(n.clone(), d.clone())
}

/// `Δ(q₁)`: the `p₁`-vertex at the origin, one neighbour on the x-axis at
/// distance `p_axis/(p₁·p_other)`, the other at
/// `((p₁q − 1)·p_other/(p₁·p_axis), p₁·p_other/p_axis)` where `q` is `q₁`
/// or, with `p₃` on the axis, `−q₁`.
pub fn standard_triangle(spec: &StandardPositionSpec) -> Result<Triangle<Rational>, FactoryError> {
    let [p1, p2, p3] = spec.ordered();
    let expected = companion_residue(&p1, &p2, &p3);
    if !(&spec.q1 - &expected).mod_floor(&p1).is_zero() {
        return Err(FactoryError::InvalidCompanion {
            q: spec.q1.clone(),
            p1,
            expected,
        });
    }
    let (axis, other, q) = match spec.on_axis {
        OnAxis::Second => (p2, p3, spec.q1.clone()),
        OnAxis::Third => (p3, p2, -&spec.q1),
    };
    let axis_pt = Point2::new(fr(&other, &(&p1 * &axis)), Rational::zero());
    let other_pt = Point2::new(
        fr(&((&p1 * &q - 1) * &axis), &(&p1 * &other)),
        fr(&(&p1 * &axis), &other),
    );
    let origin = Point2::new(Rational::zero(), Rational::zero());
    Ok(Triangle::new([
        Vertex::new(Some(p1), origin),
        Vertex::new(Some(axis), axis_pt),
        Vertex::new(Some(other), other_pt),
    ])?)
}

/// Translates `t` so that its integral barycentre is the origin.
pub fn to_barycentric<S: Scalar>(t: &Triangle<S>) -> Result<Triangle<S>, FactoryError> {
    let beta = integral_barycentre(t)?;
    Ok(t.translate(&beta.negated()))
}

/// A branch through the Markov number `a` together with a companion lift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitSpec {
    pub a: BigInt,
    pub q: BigInt,
    pub side: BranchSide,
    pub barycentric: bool,
}

impl LimitSpec {
    pub fn new(a: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        LimitSpec {
            a: a.into(),
            q: q.into(),
            side: BranchSide::C,
            barycentric: false,
        }
    }

    pub fn side(mut self, side: BranchSide) -> Self {
        self.side = side;
        self
    }

    pub fn barycentric(mut self, on: bool) -> Self {
        self.barycentric = on;
        self
    }

    /// The lift actually used in the vertex formulas: `q` on the `c` side
    /// and `−q` on the `b` side.
    pub fn effective_q(&self) -> BigInt {
        match self.side {
            BranchSide::C => self.q.clone(),
            BranchSide::B => -&self.q,
        }
    }

    fn check(&self) -> Result<(), FactoryError> {
        if !self.a.is_positive() {
            return Err(FactoryError::NonPositive("a"));
        }
        if !self.a.gcd(&self.q).is_one() {
            return Err(FactoryError::NotCoprime {
                a: self.a.clone(),
                q: self.q.clone(),
            });
        }
        Ok(())
    }

    /// The barycentric translation `(−q/(3a), −1/3)`.
    pub fn barycentric_shift(&self) -> Point2<Rational> {
        Point2::new(
            Rational::new(-self.effective_q(), BigInt::from(3) * &self.a),
            Rational::new(BigInt::from(-1), BigInt::from(3)),
        )
    }
}

/// The `n`-th triple `(a, bₙ, cₙ)` of the branch selected by `spec`.
pub fn sequence_triple(spec: &LimitSpec, n: usize) -> Result<MarkovTriple, FactoryError> {
    let root = branch_root(&spec.a)?;
    let walk = branch_walk(&root, 1, spec.side, n)?;
    Ok(walk.into_iter().last().expect("walk has n + 1 entries"))
}

/// Standard `a`-position triangle of the `n`-th branch triple with the
/// `bₙ`-vertex on the x-axis.
pub fn sequence_triangle(spec: &LimitSpec, n: usize) -> Result<Triangle<Rational>, FactoryError> {
    spec.check()?;
    let triple = sequence_triple(spec, n)?;
    let std = StandardPositionSpec::new(triple, 0).with_lift(spec.effective_q());
    let t = standard_triangle(&std)?;
    if spec.barycentric {
        Ok(t.translate(&spec.barycentric_shift()))
    } else {
        Ok(t)
    }
}

/// The limit of [`sequence_triangle`]: vertices `(0,0)`, `λ(a)·(1,0)` and
/// `(a²·λ(a))⁻¹·(aq − 1, a²)` over `Q(√(9a² − 4))`.
pub fn limit_triangle(spec: &LimitSpec) -> Result<Triangle<QuadElem>, FactoryError> {
    spec.check()?;
    let a = &spec.a;
    let lambda = lagrange_number(a);
    let d = lagrange_discriminant(a);
    let q = spec.effective_q();
    let zero = QuadElem::from_rational(Rational::zero(), d).map_err(GeometryError::from)?;
    let a2 = Rational::from_integer(a * a);
    let inv = lambda.scale(&a2).recip().map_err(GeometryError::from)?;
    let c_inf = Point2::new(
        inv.scale(&Rational::from_integer(a * &q - 1)),
        inv.scale(&a2),
    );
    let t = Triangle::new([
        Vertex::new(Some(a.clone()), Point2::new(zero.clone(), zero.clone())),
        Vertex::new(None, Point2::new(lambda, zero.clone())),
        Vertex::new(None, c_inf),
    ])?;
    if spec.barycentric {
        let shift = zero_point_like(&zero).embed_rational(&spec.barycentric_shift());
        Ok(t.translate(&shift))
    } else {
        Ok(t)
    }
}

fn zero_point_like<S: Scalar>(z: &S) -> Point2<S> {
    Point2::new(z.zero_like(), z.zero_like())
}

/// `(0,0)`, `(c/b)·(1,0)`, `(b/c)·(aq − 1, a²)`.
pub fn open_problem_triangle(
    a: &BigInt,
    q: &BigInt,
    b: &BigInt,
    c: &BigInt,
) -> Result<Triangle<Rational>, FactoryError> {
    if !a.is_positive() {
        return Err(FactoryError::NonPositive("a"));
    }
    if !b.is_positive() {
        return Err(FactoryError::NonPositive("b"));
    }
    if !c.is_positive() {
        return Err(FactoryError::NonPositive("c"));
    }
    if !a.gcd(q).is_one() {
        return Err(FactoryError::NotCoprime {
            a: a.clone(),
            q: q.clone(),
        });
    }
    let bc = fr(b, c);
    Ok(Triangle::from_points(
        Point2::new(Rational::zero(), Rational::zero()),
        Point2::new(fr(c, b), Rational::zero()),
        Point2::new(
            &bc * Rational::from_integer(a * q - 1),
            &bc * Rational::from_integer(a * a),
        ),
    )?)
}

/// Whether `(a, b, c)` is a Markov triple and `q ≡ 3·c·b⁻¹ (mod a)`.
pub fn is_markov_instance(a: &BigInt, q: &BigInt, b: &BigInt, c: &BigInt) -> bool {
    MarkovTriple::new(a.clone(), b.clone(), c.clone()).is_ok()
        && (q - companion_residue(a, b, c)).mod_floor(a).is_zero()
}

/// Least common multiple of the reduced denominators of all coordinates.
pub fn denominator(t: &Triangle<Rational>) -> BigInt {
    t.points()
        .iter()
        .flat_map(|p| [p.x.denom().clone(), p.y.denom().clone()])
        .fold(BigInt::one(), |acc, d| acc.lcm(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{quad_sign, rat};
    use crate::geometry::{
        affine_lengths, angle_determinant, apply_unimodular, geometric_mutation,
        hausdorff_distance_sq_upper, IntMat2,
    };

    fn mt(a: i64, b: i64, c: i64) -> MarkovTriple {
        MarkovTriple::new(a, b, c).unwrap()
    }

    fn pt(x: Rational, y: Rational) -> Point2<Rational> {
        Point2::new(x, y)
    }

    fn pseudo_markov(t: &Triangle<Rational>) -> bool {
        let lens = affine_lengths(t).unwrap();
        (0..3).all(|i| {
            let p = t.vertex(i).label.clone().unwrap();
            let q = t.vertex(i + 1).label.clone().unwrap();
            let r = t.vertex(i + 2).label.clone().unwrap();
            let angle = angle_determinant(t.point(i), t.point(i + 1), t.point(i + 2)).unwrap();
            lens[i] == Rational::new(p.clone(), q * r) && angle == &p * &p
        })
    }

    #[test]
    fn two_position_of_2_5_29() {
        let spec = StandardPositionSpec::new(mt(2, 5, 29), 0).with_lift(5);
        let t = standard_triangle(&spec).unwrap();
        let want = Triangle::from_points(
            pt(rat(0, 1), rat(0, 1)),
            pt(rat(45, 58), rat(10, 29)),
            pt(rat(29, 10), rat(0, 1)),
        )
        .unwrap();
        assert_eq!(t.points().to_vec().len(), 3);
        assert!(want.points().iter().all(|p| t.index_of_point(p).is_some()));
        assert!(pseudo_markov(&t));
        assert_eq!(denominator(&t), BigInt::from(290));
        let idx = t.index_of_point(&pt(rat(29, 10), rat(0, 1))).unwrap();
        assert_eq!(t.vertex(idx).label, Some(BigInt::from(5)));
    }

    #[test]
    fn rejects_wrong_lift() {
        let spec = StandardPositionSpec::new(mt(5, 1, 2), 0).with_lift(2);
        assert!(matches!(
            standard_triangle(&spec),
            Err(FactoryError::InvalidCompanion { .. })
        ));
    }

    #[test]
    fn unit_triangle_and_barycentric() {
        let t = standard_triangle(&StandardPositionSpec::new(mt(1, 1, 1), 0)).unwrap();
        let unit = Triangle::from_points(
            pt(rat(0, 1), rat(0, 1)),
            pt(rat(0, 1), rat(1, 1)),
            pt(rat(1, 1), rat(0, 1)),
        )
        .unwrap();
        assert!(unit.points().iter().all(|p| t.index_of_point(p).is_some()));
        let b = to_barycentric(&t).unwrap();
        for p in [
            pt(rat(-1, 3), rat(-1, 3)),
            pt(rat(-1, 3), rat(2, 3)),
            pt(rat(2, 3), rat(-1, 3)),
        ] {
            assert!(b.index_of_point(&p).is_some());
        }
        assert_eq!(integral_barycentre(&b).unwrap(), pt(rat(0, 1), rat(0, 1)));
    }

    #[test]
    fn standard_positions_over_the_tree() {
        for node in crate::markov::tree(6) {
            for apex in 0..3 {
                let spec = StandardPositionSpec::new(node.triple.clone(), apex);
                let t = standard_triangle(&spec).unwrap();
                assert!(pseudo_markov(&t), "{}", node.triple);
                let [p1, p2, p3] = spec.ordered();
                assert_eq!(denominator(&t), &p1 * &p2 * &p3);
                let q1 = spec.q1.clone();
                assert_eq!(
                    integral_barycentre(&t).unwrap(),
                    pt(Rational::new(q1.clone(), BigInt::from(3) * &p1), rat(1, 3))
                );

                let swapped = standard_triangle(&spec.clone().with_axis(OnAxis::Third)).unwrap();
                let psi = IntMat2::axis_swap(&p1, &q1);
                let zero = pt(rat(0, 1), rat(0, 1));
                assert_eq!(apply_unimodular(&psi, &zero, &t, true).unwrap(), swapped);

                let lifted =
                    standard_triangle(&spec.clone().with_lift(&q1 - BigInt::from(2) * &p1))
                        .unwrap();
                assert_eq!(
                    apply_unimodular(&IntMat2::lift(2), &zero, &t, true).unwrap(),
                    lifted
                );
            }
        }
    }

    #[test]
    fn mutation_at_axis_vertex_matches_closed_form() {
        for node in crate::markov::tree(5) {
            let spec = StandardPositionSpec::new(node.triple.clone(), 0);
            let [p1, p2, p3] = spec.ordered();
            let t = standard_triangle(&spec).unwrap();
            let idx = t.index_of_label(&p2).unwrap();
            if t.labels()
                .iter()
                .filter(|l| l.as_ref() == Some(&p2))
                .count()
                > 1
            {
                continue;
            }
            let m = geometric_mutation(&t, idx).unwrap();
            let p2_hat = BigInt::from(3) * &p1 * &p3 - &p2;
            let new_pt = pt(
                Rational::new((&p1 * &spec.q1 - 1) * &p3, &p1 * &p2_hat),
                Rational::new(&p1 * &p3, p2_hat.clone()),
            );
            let moved = pt(Rational::new(p2_hat.clone(), &p1 * &p3), rat(0, 1));
            assert!(m.index_of_point(&new_pt).is_some(), "{}", node.triple);
            assert!(m.index_of_point(&moved).is_some(), "{}", node.triple);
            assert!(pseudo_markov(&m));
        }
    }

    #[test]
    fn sequence_matches_fibonacci() {
        let spec = LimitSpec::new(1, 1);
        let fib = [1i64, 1, 2, 5, 13, 34, 89];
        let origin = pt(rat(0, 1), rat(0, 1));
        for n in 0..5 {
            let t = sequence_triangle(&spec, n).unwrap();
            let axis = pt(rat(fib[n + 1], fib[n]), rat(0, 1));
            let i = t.index_of_point(&axis).unwrap();
            assert_eq!(t.vertex(i).label, Some(BigInt::from(fib[n])));
            let (_, len) = crate::geometry::primitive_vector(&origin, &axis).unwrap();
            assert_eq!(len, rat(fib[n + 1], fib[n]));
        }
    }

    #[test]
    fn consecutive_sequence_terms_are_mutations() {
        for (a, q) in [(1, 1), (2, 1), (5, 1)] {
            let spec = LimitSpec::new(a, q);
            for n in 0..4 {
                let t = sequence_triangle(&spec, n).unwrap();
                let next = sequence_triangle(&spec, n + 1).unwrap();
                let b = sequence_triple(&spec, n).unwrap().get(1).clone();
                let idx = t.index_of_label(&b).unwrap();
                if t.labels().iter().filter(|l| l.as_ref() == Some(&b)).count() > 1 {
                    continue;
                }
                let m = geometric_mutation(&t, idx).unwrap();
                assert!(next.points().iter().all(|p| m.index_of_point(p).is_some()));
            }
        }
    }

    #[test]
    fn limit_of_golden_triangle() {
        let t = limit_triangle(&LimitSpec::new(1, 1)).unwrap();
        let tau2: QuadElem = "3/2 + 1/2*sqrt(5)".parse().unwrap();
        let zero = tau2.zero_like();
        assert!(t
            .index_of_point(&Point2::new(tau2.clone(), zero.clone()))
            .is_some());
        assert!(t
            .index_of_point(&Point2::new(zero.clone(), tau2.recip().unwrap()))
            .is_some());
    }

    #[test]
    fn sequence_approaches_limit() {
        for a in [1, 2, 5] {
            let spec = LimitSpec::new(a, 1);
            let lim = limit_triangle(&spec).unwrap();
            let d = lagrange_discriminant(&BigInt::from(a));
            let mut prev: Option<QuadElem> = None;
            for n in 1..=10 {
                let t = sequence_triangle(&spec, n)
                    .unwrap()
                    .embed_quadratic(&d)
                    .unwrap();
                let h = hausdorff_distance_sq_upper(&t, &lim);
                if let Some(p) = &prev {
                    assert_eq!(quad_sign(&(p - &h)), 1, "a = {a}, n = {n}");
                }
                prev = Some(h);
            }
        }
    }

    #[test]
    fn barycentre_on_limit_edge() {
        for a in [1i64, 2, 5, 13] {
            let spec = LimitSpec::new(a, 1).barycentric(true);
            let t = limit_triangle(&spec).unwrap();
            let z = t.point(0).x.zero_like();
            let origin = Point2::new(z.clone(), z);
            let i_b = (0..3)
                .find(|&i| t.vertex(i).label.is_none() && t.vertex(i + 1).label.is_none())
                .unwrap();
            let e = t.point(i_b + 1).minus(t.point(i_b));
            let w = origin.minus(t.point(i_b));
            assert!(crate::geometry::det(&e, &w).is_zero_value());
        }
    }

    #[test]
    fn open_problem_family() {
        let one = BigInt::one();
        let t = open_problem_triangle(&one, &one, &one, &one).unwrap();
        assert_eq!(denominator(&t), one);
        for node in crate::markov::tree(5) {
            let spec = StandardPositionSpec::new(node.triple.clone(), 0);
            let [a, b, c] = spec.ordered();
            let f = open_problem_triangle(&a, &spec.q1, &b, &c).unwrap();
            let std = standard_triangle(&spec).unwrap();
            let dil = std.dilate(&Rational::from_integer(a.clone())).unwrap();
            assert!(dil.points().iter().all(|p| f.index_of_point(p).is_some()));
            assert!(is_markov_instance(&a, &spec.q1, &b, &c));
        }
        assert!(!is_markov_instance(
            &one,
            &one,
            &BigInt::from(2),
            &BigInt::from(2)
        ));
    }

    #[test]
    fn mixed_denominator_lcm() {
        let t = Triangle::from_points(
            pt(rat(1, 2), rat(1, 3)),
            pt(rat(1, 3), rat(1, 2)),
            pt(rat(1, 8), rat(1, 8)),
        )
        .unwrap();
        assert_eq!(denominator(&t), BigInt::from(24));
    }
}
