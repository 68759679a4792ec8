use num_bigint::BigInt;
use num_traits::Zero;

use super::count::LatticeCounter;
use crate::arith::{Rational, Scalar};
use crate::geometry::{half_shear_image, ConvexPolygon, IntVec2, Point2, Triangle};

/// Lattice-point counter for the dilates of the half-shear image of a
/// triangle, which is in general a non-convex polygon with up to five
/// vertices. It counts the two convex pieces separately and subtracts the
/// lattice points on the seam they share.
#[derive(Clone, Debug)]
pub struct HalfShearCounter<S> {
    direction: IntVec2,
    pieces: Vec<LatticeCounter<S>>,
    seam: Option<(Point2<S>, Point2<S>)>,
}

impl<S: Scalar> HalfShearCounter<S> {
    pub fn new(t: &Triangle<S>, v: &IntVec2) -> Self {
        let img = half_shear_image(&ConvexPolygon::from(t), v);
        let pieces = [img.sheared, img.fixed]
            .into_iter()
            .flatten()
            .map(|p| LatticeCounter::for_polygon(&p))
            .collect();
        HalfShearCounter {
            direction: v.clone(),
            pieces,
            seam: img.seam,
        }
    }

    pub fn count(&self, t: u64) -> BigInt {
        let mut total: BigInt = self.pieces.iter().map(|c| c.count(t)).sum();
        if let Some((a, b)) = &self.seam {
            total -= self.seam_points(a, b, t);
        }
        total
    }

    /// Lattice points `k·v` on the dilated seam.
    fn seam_points(&self, a: &Point2<S>, b: &Point2<S>, t: u64) -> BigInt {
        let v = &self.direction;
        let param = |p: &Point2<S>| {
            let (coord, vc) = if v.x.is_zero() {
                (&p.y, &v.y)
            } else {
                (&p.x, &v.x)
            };
            coord
                .scale(&Rational::from_integer(BigInt::from(t)))
                .try_div(&coord.embed(&Rational::from_integer(vc.clone())))
                .expect("primitive direction is nonzero")
        };
        let (sa, sb) = (param(a), param(b));
        let (lo, hi) = if sa <= sb { (sa, sb) } else { (sb, sa) };
        let n = hi.floor() - lo.ceil() + 1;
        if n < BigInt::zero() {
            BigInt::zero()
        } else {
            n
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn shear_image_of_crossing_triangle_keeps_counts() {
        let t = Triangle::from_points(
            Point2::new(rat(-3, 2), rat(-1, 3)),
            Point2::new(rat(5, 2), rat(-2, 3)),
            Point2::new(rat(-1, 2), rat(7, 3)),
        )
        .unwrap();
        for v in [IntVec2::new(0, 1), IntVec2::new(1, 1), IntVec2::new(2, -3)] {
            let c = HalfShearCounter::new(&t, &v);
            let base = LatticeCounter::new(&t);
            for k in 0..12 {
                assert_eq!(c.count(k), base.count(k), "v = {v}, t = {k}");
            }
        }
    }
}
