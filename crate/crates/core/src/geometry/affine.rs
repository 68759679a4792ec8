use num_bigint::BigInt;
use num_traits::Signed;

use super::point::{det, primitive_direction, IntMat2, IntVec2, Point2};
use super::triangle::{Triangle, Vertex};
use super::GeometryError;
use crate::arith::Scalar;

/// Primitive integer vector `v` and affine length `r > 0` with `q − p = r·v`.
///
/// Over `Q(√d)` this requires the rational and irrational parts of `q − p`
/// to be parallel; otherwise the direction is irrational.
pub fn primitive_vector<S: Scalar>(
    p: &Point2<S>,
    q: &Point2<S>,
) -> Result<(IntVec2, S), GeometryError> {
    let diff = q.minus(p);
    let (rx, ix) = diff.x.parts();
    let (ry, iy) = diff.y.parts();
    if &rx * &iy != &ry * &ix {
        return Err(GeometryError::IrrationalDirection);
    }
    let v = primitive_direction(&rx, &ry)
        .or_else(|| primitive_direction(&ix, &iy))
        .ok_or(GeometryError::ZeroVector)?;
    let vf = diff.embed_int(&v);
    let r = if v.x.is_positive() || v.x.is_negative() {
        diff.x.try_div(&vf.x)?
    } else {
        diff.y.try_div(&vf.y)?
    };
    if r.sign() < 0 {
        Ok((v.negated(), r.negated()))
    } else {
        Ok((v, r))
    }
}

/// `|det(v₁₂, v₁₃)|` of the primitive vectors along the two edges at `vertex`.
pub fn angle_determinant<S: Scalar>(
    vertex: &Point2<S>,
    other1: &Point2<S>,
    other2: &Point2<S>,
) -> Result<BigInt, GeometryError> {
    let (v1, _) = primitive_vector(vertex, other1)?;
    let (v2, _) = primitive_vector(vertex, other2)?;
    Ok(v1.det(&v2).abs())
}

/// Affine length of the edge opposite each vertex, indexed like the vertices.
pub fn affine_lengths<S: Scalar>(t: &Triangle<S>) -> Result<[S; 3], GeometryError> {
    let len = |i: usize| primitive_vector(t.point(i + 1), t.point(i + 2)).map(|(_, r)| r);
    Ok([len(0)?, len(1)?, len(2)?])
}

/// Shears `u` by `u ↦ u + det(v, u)·v` when `det(u, v) ≥ 0`, else returns
/// it unchanged. Points on the line spanned by `v` are fixed either way.
pub fn half_shear<S: Scalar>(v: &IntVec2, u: &Point2<S>) -> Point2<S> {
    let vf = u.embed_int(v);
    if det(u, &vf).sign() >= 0 {
        u.plus(&vf.times(&det(&vf, u)))
    } else {
        u.clone()
    }
}

/// Apex and primitive direction of the integral bisector at vertex `idx`.
/// The direction is that of `v₁₂ + v₁₃`, pointing into the triangle.
pub fn integral_bisector<S: Scalar>(
    t: &Triangle<S>,
    idx: usize,
) -> Result<(Point2<S>, IntVec2), GeometryError> {
    let p = t.point(idx);
    let (v1, _) = primitive_vector(p, t.point(idx + 1))?;
    let (v2, _) = primitive_vector(p, t.point(idx + 2))?;
    Ok((p.clone(), v1.plus(&v2).primitive()))
}

pub fn affine_distance<S: Scalar>(p: &Point2<S>, line_point: &Point2<S>, v: &IntVec2) -> S {
    det(&p.minus(line_point), &p.embed_int(v)).abs_value()
}

/// Common point of the three integral bisectors.
pub fn integral_barycentre<S: Scalar>(t: &Triangle<S>) -> Result<Point2<S>, GeometryError> {
    let (p0, v0) = integral_bisector(t, 0)?;
    let (p1, v1) = integral_bisector(t, 1)?;
    let v0f = p0.embed_int(&v0);
    let v1f = p0.embed_int(&v1);
    let s = det(&p1.minus(&p0), &v1f).try_div(&det(&v0f, &v1f))?;
    let beta = p0.plus(&v0f.times(&s));
    debug_assert!(integral_bisector(t, 2)
        .map(|(p2, v2)| det(&beta.minus(&p2), &p2.embed_int(&v2)).is_zero_value())
        .unwrap_or(false));
    Ok(beta)
}

/// The piecewise-linear map `T_p ∘ φ^{1/2}_v ∘ T_{−p}` of a geometric
/// mutation, with `p` the apex and `v` the bisector direction.
#[derive(Clone, Debug)]
pub struct MutationMap<S> {
    pub apex: Point2<S>,
    pub direction: IntVec2,
}

impl<S: Scalar> MutationMap<S> {
    pub fn apply(&self, x: &Point2<S>) -> Point2<S> {
        half_shear(&self.direction, &x.minus(&self.apex)).plus(&self.apex)
    }

    /// The full (not half) shear conjugated to the apex.
    pub fn apply_full_shear(&self, x: &Point2<S>) -> Point2<S> {
        IntMat2::shear(&self.direction)
            .apply(&x.minus(&self.apex))
            .plus(&self.apex)
    }
}

pub fn mutation_map<S: Scalar>(
    t: &Triangle<S>,
    idx: usize,
) -> Result<MutationMap<S>, GeometryError> {
    let (apex, direction) = integral_bisector(t, idx)?;
    Ok(MutationMap { apex, direction })
}

/// Geometric mutation at vertex `idx`.
///
/// The bisector cuts the triangle in two; the half on the sheared side is
/// moved, the other stays. The result is a triangle exactly when the apex
/// ends up inside the segment joining the fixed vertex to the image of the
/// sheared one. Its vertices are the fixed vertex, the sheared vertex and
/// the point where the bisector meets the opposite edge; the latter takes
/// the mutated label `3·l_q·l_r − l_p` when all labels are present.
pub fn geometric_mutation<S: Scalar>(
    t: &Triangle<S>,
    idx: usize,
) -> Result<Triangle<S>, GeometryError> {
    let map = mutation_map(t, idx)?;
    let p = &map.apex;
    let vf = p.embed_int(&map.direction);
    let (qi, ri) = ((idx + 1) % 3, (idx + 2) % 3);
    let q = t.point(qi);
    let r = t.point(ri);
    let (fixed, sheared) = if det(&r.minus(p), &vf).sign() > 0 {
        (qi, ri)
    } else {
        (ri, qi)
    };
    let fixed_pt = t.point(fixed);
    let moved = map.apply(t.point(sheared));

    let edge = r.minus(q);
    let s = det(&q.minus(p), &edge).try_div(&det(&vf, &edge))?;
    let w = p.plus(&vf.times(&s));

    let along = moved.minus(fixed_pt);
    let to_apex = p.minus(fixed_pt);
    let collinear = det(&along, &to_apex).is_zero_value();
    let strictly_between = to_apex.dot(&along).sign() > 0 && moved.minus(p).dot(&along).sign() > 0;
    if !(collinear && strictly_between) {
        return Err(GeometryError::NotATriangle);
    }

    let labels = t.labels();
    let new_label = match (&labels[idx], &labels[qi], &labels[ri]) {
        (Some(lp), Some(lq), Some(lr)) => Some(BigInt::from(3) * lq * lr - lp),
        _ => None,
    };
    Triangle::new([
        Vertex::new(labels[fixed].clone(), fixed_pt.clone()),
        Vertex::new(labels[sheared].clone(), moved),
        Vertex::new(new_label, w),
    ])
}

/// Vertex-wise `x ↦ M·x + shift`. With `require_unimodular` the matrix must
/// have determinant ±1.
pub fn apply_unimodular<S: Scalar>(
    m: &IntMat2,
    shift: &Point2<S>,
    t: &Triangle<S>,
    require_unimodular: bool,
) -> Result<Triangle<S>, GeometryError> {
    if require_unimodular && !m.is_unimodular() {
        return Err(GeometryError::NonUnimodular(m.det()));
    }
    t.map_points(|p| m.apply(p).plus(shift))
}
