use num_bigint::BigInt;
use serde_json::{json, Value};

use super::point::{det, Point2};
use super::GeometryError;
use crate::arith::{QuadElem, Rational, Scalar};

/// A triangle vertex with an optional Markov label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex<S> {
    pub label: Option<BigInt>,
    pub point: Point2<S>,
}

impl<S> Vertex<S> {
    pub fn new(label: Option<BigInt>, point: Point2<S>) -> Self {
        Vertex { label, point }
    }
}

/// Non-degenerate triangle with vertices stored counterclockwise.
///
/// Equality ignores which vertex is listed first: two triangles are equal
/// when their labeled vertex cycles agree up to rotation.
#[derive(Clone, Debug)]
pub struct Triangle<S> {
    vertices: [Vertex<S>; 3],
}

impl<S: Scalar> Triangle<S> {
    /// Reorders clockwise input to counterclockwise by swapping the last two
    /// vertices.
    pub fn new(vertices: [Vertex<S>; 3]) -> Result<Self, GeometryError> {
        let [a, b, c] = vertices;
        let orient = det(&b.point.minus(&a.point), &c.point.minus(&a.point)).sign();
        match orient {
            0 => Err(GeometryError::Degenerate),
            1 => Ok(Triangle {
                vertices: [a, b, c],
            }),
            _ => Ok(Triangle {
                vertices: [a, c, b],
            }),
        }
    }

    pub fn from_points(p0: Point2<S>, p1: Point2<S>, p2: Point2<S>) -> Result<Self, GeometryError> {
        Self::new([
            Vertex::new(None, p0),
            Vertex::new(None, p1),
            Vertex::new(None, p2),
        ])
    }

    pub fn vertices(&self) -> &[Vertex<S>; 3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex<S> {
        &self.vertices[i % 3]
    }

    pub fn point(&self, i: usize) -> &Point2<S> {
        &self.vertices[i % 3].point
    }

    pub fn points(&self) -> [Point2<S>; 3] {
        [
            self.vertices[0].point.clone(),
            self.vertices[1].point.clone(),
            self.vertices[2].point.clone(),
        ]
    }

    pub fn labels(&self) -> [Option<BigInt>; 3] {
        [
            self.vertices[0].label.clone(),
            self.vertices[1].label.clone(),
            self.vertices[2].label.clone(),
        ]
    }

    pub fn index_of_label(&self, label: &BigInt) -> Option<usize> {
        self.vertices
            .iter()
            .position(|v| v.label.as_ref() == Some(label))
    }

    pub fn index_of_point(&self, p: &Point2<S>) -> Option<usize> {
        self.vertices.iter().position(|v| &v.point == p)
    }

    /// Applies `f` to every vertex position, keeping labels.
    pub fn map_points<T: Scalar>(
        &self,
        mut f: impl FnMut(&Point2<S>) -> Point2<T>,
    ) -> Result<Triangle<T>, GeometryError> {
        let [a, b, c] = &self.vertices;
        Triangle::new([
            Vertex::new(a.label.clone(), f(&a.point)),
            Vertex::new(b.label.clone(), f(&b.point)),
            Vertex::new(c.label.clone(), f(&c.point)),
        ])
    }

    pub fn translate(&self, t: &Point2<S>) -> Triangle<S> {
        self.map_points(|p| p.plus(t))
            .expect("translation preserves non-degeneracy")
    }

    /// Dilation about the origin by a positive rational factor.
    pub fn dilate(&self, k: &Rational) -> Result<Triangle<S>, GeometryError> {
        self.map_points(|p| p.scale(k))
    }

    pub fn twice_signed_area(&self) -> S {
        let [a, b, c] = self.points();
        det(&b.minus(&a), &c.minus(&a))
    }

    pub fn area(&self) -> S {
        self.twice_signed_area()
            .scale(&Rational::new(1.into(), 2.into()))
    }

    /// Whether `p` lies in the closed triangle.
    pub fn contains(&self, p: &Point2<S>) -> bool {
        (0..3).all(|i| {
            let a = self.point(i);
            let b = self.point(i + 1);
            det(&b.minus(a), &p.minus(a)).sign() >= 0
        })
    }

    pub fn field_name(&self) -> String {
        self.point(0).x.field_name()
    }

    pub fn is_rational(&self) -> bool {
        self.vertices
            .iter()
            .all(|v| v.point.x.to_rational().is_some() && v.point.y.to_rational().is_some())
    }

    pub fn to_rational(&self) -> Option<Triangle<Rational>> {
        if !self.is_rational() {
            return None;
        }
        self.map_points(|p| {
            Point2::new(
                p.x.to_rational().expect("checked"),
                p.y.to_rational().expect("checked"),
            )
        })
        .ok()
    }

    pub fn to_json(&self) -> Value {
        let verts: Vec<Value> = self
            .vertices
            .iter()
            .map(|v| {
                json!({
                    "label": v.label.as_ref().map(|l| l.to_string()),
                    "x": v.point.x.to_string(),
                    "y": v.point.y.to_string(),
                })
            })
            .collect();
        json!({ "field": self.field_name(), "vertices": verts })
    }

    pub fn from_json(value: &Value) -> Result<Triangle<S>, GeometryError> {
        let bad = |m: &str| GeometryError::Json(m.to_string());
        let verts = value
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing 'vertices' array"))?;
        if verts.len() != 3 {
            return Err(bad("expected exactly three vertices"));
        }
        let mut out = Vec::with_capacity(3);
        for v in verts {
            let coord = |k: &str| -> Result<S, GeometryError> {
                let s = v
                    .get(k)
                    .and_then(Value::as_str)
                    .ok_or_else(|| bad("vertex coordinates must be strings"))?;
                S::parse_exact(s).map_err(GeometryError::from)
            };
            let label = match v.get("label") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) => Some(s.parse().map_err(|_| bad("bad label"))?),
                Some(Value::Number(n)) => {
                    Some(BigInt::from(n.as_i64().ok_or_else(|| bad("bad label"))?))
                }
                Some(_) => return Err(bad("bad label")),
            };
            out.push(Vertex::new(label, Point2::new(coord("x")?, coord("y")?)));
        }
        let [a, b, c]: [Vertex<S>; 3] = out.try_into().expect("length checked");
        Triangle::new([a, b, c])
    }
}

impl Triangle<Rational> {
    /// The same triangle viewed inside `Q(√d)`.
    pub fn embed_quadratic(&self, d: &BigInt) -> Result<Triangle<QuadElem>, GeometryError> {
        let zero = QuadElem::from_rational(Rational::from_integer(0.into()), d.clone())?;
        let origin = Point2::new(zero.clone(), zero);
        self.map_points(|p| origin.embed_rational(p))
    }
}

impl<S: Scalar> PartialEq for Triangle<S> {
    fn eq(&self, other: &Self) -> bool {
        (0..3).any(|r| (0..3).all(|i| self.vertices[i] == other.vertices[(i + r) % 3]))
    }
}

impl<S: Scalar> Eq for Triangle<S> {}
