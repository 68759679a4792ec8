use super::point::{det, IntMat2, IntVec2, Point2};
use super::triangle::Triangle;
use super::GeometryError;
use crate::arith::Scalar;

/// Convex polygon with at least three vertices, counterclockwise, no
/// repeated or collinear consecutive vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexPolygon<S> {
    vertices: Vec<Point2<S>>,
}

impl<S: Scalar> ConvexPolygon<S> {
    /// Accepts the vertices in either orientation and drops collinear or
    /// repeated points. Fails when fewer than three corners remain or the
    /// polygon is not convex.
    pub fn new(points: Vec<Point2<S>>) -> Result<Self, GeometryError> {
        let mut pts = points;
        pts.dedup();
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        let mut changed = true;
        while changed && pts.len() >= 3 {
            changed = false;
            let n = pts.len();
            for i in 0..n {
                let (a, b, c) = (&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]);
                if det(&b.minus(a), &c.minus(b)).is_zero_value() {
                    pts.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        if pts.len() < 3 {
            return Err(GeometryError::Degenerate);
        }
        let n = pts.len();
        let turns: Vec<i8> = (0..n)
            .map(|i| {
                det(
                    &pts[(i + 1) % n].minus(&pts[i]),
                    &pts[(i + 2) % n].minus(&pts[(i + 1) % n]),
                )
                .sign()
            })
            .collect();
        if turns.iter().all(|&s| s < 0) {
            pts.reverse();
        } else if !turns.iter().all(|&s| s > 0) {
            return Err(GeometryError::NotConvex);
        }
        Ok(ConvexPolygon { vertices: pts })
    }

    pub fn vertices(&self) -> &[Point2<S>] {
        &self.vertices
    }

    /// Closed-set membership.
    pub fn contains(&self, p: &Point2<S>) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = &self.vertices[i];
            let b = &self.vertices[(i + 1) % n];
            det(&b.minus(a), &p.minus(a)).sign() >= 0
        })
    }
}

impl<S: Scalar> From<&Triangle<S>> for ConvexPolygon<S> {
    fn from(t: &Triangle<S>) -> Self {
        ConvexPolygon {
            vertices: t.points().to_vec(),
        }
    }
}

/// The part of a convex vertex list on the side `det(u, v)·sign ≥ 0` of the
/// line through the origin spanned by `v`.
fn clip<S: Scalar>(pts: &[Point2<S>], v: &Point2<S>, sign: i8) -> Vec<Point2<S>> {
    let side = |p: &Point2<S>| det(p, v).sign() * sign;
    let n = pts.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = (&pts[i], &pts[(i + 1) % n]);
        let (sa, sb) = (side(a), side(b));
        if sa >= 0 {
            out.push(a.clone());
        }
        if sa * sb < 0 {
            let da = det(a, v);
            let db = det(b, v);
            let s = da.try_div(&da.minus(&db)).expect("opposite signs");
            out.push(a.plus(&b.minus(a).times(&s)));
        }
    }
    out
}

/// Image of a polygon under the half-shear along `v`, split into the
/// sheared piece and the fixed piece. The two pieces meet along a segment
/// of the line spanned by `v` (the seam), which is shared whenever both are
/// present.
#[derive(Clone, Debug)]
pub struct HalfShearImage<S> {
    pub sheared: Option<ConvexPolygon<S>>,
    pub fixed: Option<ConvexPolygon<S>>,
    /// Endpoints of the shared segment, when the line crosses the interior.
    pub seam: Option<(Point2<S>, Point2<S>)>,
}

pub fn half_shear_image<S: Scalar>(poly: &ConvexPolygon<S>, v: &IntVec2) -> HalfShearImage<S> {
    let vf = poly.vertices[0].embed_int(v);
    let right = clip(&poly.vertices, &vf, 1);
    let left = clip(&poly.vertices, &vf, -1);
    let shear = IntMat2::shear(v);
    let sheared_pts: Vec<Point2<S>> = right.iter().map(|p| shear.apply(p)).collect();
    let sheared = ConvexPolygon::new(sheared_pts).ok();
    let fixed = ConvexPolygon::new(left.clone()).ok();
    let seam = if sheared.is_some() && fixed.is_some() {
        let on_line: Vec<Point2<S>> = right
            .iter()
            .filter(|p| det(p, &vf).is_zero_value())
            .cloned()
            .collect();
        match on_line.as_slice() {
            [a, b] => Some((a.clone(), b.clone())),
            _ => None,
        }
    } else {
        None
    };
    HalfShearImage {
        sheared,
        fixed,
        seam,
    }
}
