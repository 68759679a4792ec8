use super::point::Point2;
use super::triangle::Triangle;
use crate::arith::Scalar;

fn segment_distance_sq<S: Scalar>(p: &Point2<S>, a: &Point2<S>, b: &Point2<S>) -> S {
    let ab = b.minus(a);
    let ap = p.minus(a);
    let proj = ap.dot(&ab);
    if proj.sign() <= 0 {
        return ap.dot(&ap);
    }
    let len_sq = ab.dot(&ab);
    if proj >= len_sq {
        let bp = p.minus(b);
        return bp.dot(&bp);
    }
    let along = proj
        .times(&proj)
        .try_div(&len_sq)
        .expect("non-degenerate edge");
    ap.dot(&ap).minus(&along)
}

/// Exact squared Euclidean distance from `p` to the closed triangle.
pub fn point_triangle_distance_sq<S: Scalar>(p: &Point2<S>, t: &Triangle<S>) -> S {
    if t.contains(p) {
        return p.x.zero_like();
    }
    (0..3)
        .map(|i| segment_distance_sq(p, t.point(i), t.point(i + 1)))
        .min()
        .expect("three edges")
}

/// Squared Hausdorff distance between two triangles over the same field.
///
/// The distance to a convex set is a convex function, so each one-sided
/// supremum is attained at a vertex; the maximum over the six vertices is
/// therefore the exact squared Hausdorff distance.
pub fn hausdorff_distance_sq_upper<S: Scalar>(a: &Triangle<S>, b: &Triangle<S>) -> S {
    let one_sided = |from: &Triangle<S>, to: &Triangle<S>| {
        (0..3)
            .map(|i| point_triangle_distance_sq(from.point(i), to))
            .max()
            .expect("three vertices")
    };
    one_sided(a, b).max(one_sided(b, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Rational};

    fn ip(x: i64, y: i64) -> Point2<Rational> {
        Point2::from_ints(x, y)
    }

    #[test]
    fn identical_triangles_have_zero_distance() {
        let t = Triangle::from_points(ip(0, 0), ip(1, 0), ip(0, 1)).unwrap();
        assert_eq!(hausdorff_distance_sq_upper(&t, &t), rat(0, 1));
    }

    #[test]
    fn unit_translate() {
        let t = Triangle::from_points(ip(0, 0), ip(1, 0), ip(0, 1)).unwrap();
        let s = t.translate(&ip(1, 0));
        assert_eq!(hausdorff_distance_sq_upper(&t, &s), rat(1, 1));
    }

    #[test]
    fn distance_to_edge_interior() {
        let t = Triangle::from_points(ip(0, 0), ip(4, 0), ip(0, 4)).unwrap();
        assert_eq!(point_triangle_distance_sq(&ip(3, 3), &t), rat(2, 1));
        assert_eq!(point_triangle_distance_sq(&ip(1, 1), &t), rat(0, 1));
        assert_eq!(point_triangle_distance_sq(&ip(-1, -2), &t), rat(5, 1));
    }
}
