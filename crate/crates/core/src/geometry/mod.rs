//! Planar integral affine geometry over an exact field.

mod affine;
mod hausdorff;
mod point;
mod polygon;
mod triangle;

pub use affine::{
    affine_distance, affine_lengths, angle_determinant, apply_unimodular, geometric_mutation,
    half_shear, integral_barycentre, integral_bisector, mutation_map, primitive_vector,
    MutationMap,
};
pub use hausdorff::{hausdorff_distance_sq_upper, point_triangle_distance_sq};
pub use point::{det, primitive_direction, IntMat2, IntVec2, Point2, Vec2};
pub use polygon::{half_shear_image, ConvexPolygon, HalfShearImage};
pub use triangle::{Triangle, Vertex};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate triangle: vertices are collinear")]
    Degenerate,
    #[error("segment direction is not proportional to an integer vector")]
    IrrationalDirection,
    #[error("coincident points have no direction")]
    ZeroVector,
    #[error("polygon is not convex")]
    NotConvex,
    #[error("mutation image is not a triangle")]
    NotATriangle,
    #[error("matrix has determinant {0}, not ±1")]
    NonUnimodular(num_bigint::BigInt),
    #[error("triangle JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
