//! The small triangle-description language accepted by the command line.
//!
//! ```text
//! standard triple=2,5,29 [p=2] [q=5] [axis=p2|p3] [barycentric] [scale=k]
//! limit a=2 [q=1] [side=b|c] [barycentric] [scale=k]
//! sequence a=2 n=4 [q=1] [side=b|c] [barycentric] [scale=k]
//! open a=1 q=1 b=2 c=5 [scale=k]
//! vertices (x0, y0) (x1, y1) (x2, y2)
//! ```
//!
//! Coordinates in `vertices` are exact rationals such as `-3/2` or quadratic
//! elements such as `3/2 + 1/2*sqrt(5)`. A JSON triangle in the format
//! printed by the `triangle` command is accepted as well.

use std::fmt;

use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

use crate::arith::{parse_rational, QuadElem, Rational, Scalar};
use crate::factory::{
    denominator, limit_triangle, open_problem_triangle, sequence_triangle, standard_triangle,
    to_barycentric, FactoryError, LimitSpec, OnAxis, StandardPositionSpec,
};
use crate::geometry::{integral_barycentre, GeometryError, Point2, Triangle, Vertex};
use crate::markov::{BranchSide, MarkovTriple};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("spec error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error(transparent)]
    Factory(#[from] FactoryError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

fn syntax(column: usize, message: impl Into<String>) -> SpecError {
    SpecError::Syntax {
        column: column + 1,
        message: message.into(),
    }
}

/// A triangle over the rationals or over one real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyTriangle {
    Rational(Triangle<Rational>),
    Quadratic(Triangle<QuadElem>),
}

impl AnyTriangle {
    pub fn to_json(&self) -> Value {
        match self {
            AnyTriangle::Rational(t) => t.to_json(),
            AnyTriangle::Quadratic(t) => t.to_json(),
        }
    }

    pub fn as_rational(&self) -> Option<&Triangle<Rational>> {
        match self {
            AnyTriangle::Rational(t) => Some(t),
            AnyTriangle::Quadratic(_) => None,
        }
    }

    pub fn dilate(&self, k: &Rational) -> Result<AnyTriangle, GeometryError> {
        Ok(match self {
            AnyTriangle::Rational(t) => AnyTriangle::Rational(t.dilate(k)?),
            AnyTriangle::Quadratic(t) => AnyTriangle::Quadratic(t.dilate(k)?),
        })
    }

    /// Summary used by the `triangle` command: vertices, denominator (when
    /// rational), integral barycentre (when the edges have rational
    /// directions) and area.
    pub fn describe(&self) -> Value {
        fn inner<S: Scalar>(t: &Triangle<S>) -> Value {
            let mut v = t.to_json();
            let beta = integral_barycentre(t)
                .map(|b| serde_json::json!({ "x": b.x.to_string(), "y": b.y.to_string() }))
                .unwrap_or(Value::Null);
            v["barycentre"] = beta;
            v["area"] = Value::String(t.area().to_string());
            v
        }
        match self {
            AnyTriangle::Rational(t) => {
                let mut v = inner(t);
                v["denominator"] = Value::String(denominator(t).to_string());
                v
            }
            AnyTriangle::Quadratic(t) => {
                let mut v = inner(t);
                v["denominator"] = Value::Null;
                v
            }
        }
    }
}

impl fmt::Display for AnyTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write<S: Scalar>(f: &mut fmt::Formatter<'_>, t: &Triangle<S>) -> fmt::Result {
            for (i, v) in t.vertices().iter().enumerate() {
                if i > 0 {
                    write!(f, "  ")?;
                }
                match &v.label {
                    Some(l) => write!(f, "[{l}] {}", v.point)?,
                    None => write!(f, "{}", v.point)?,
                }
            }
            Ok(())
        }
        match self {
            AnyTriangle::Rational(t) => write(f, t),
            AnyTriangle::Quadratic(t) => write(f, t),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(s: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        if ch.is_whitespace() {
            if let Some(st) = start.take() {
                out.push(Token {
                    text: &s[st..i],
                    column: st,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(st) = start {
        out.push(Token {
            text: &s[st..],
            column: st,
        });
    }
    out
}

#[derive(Default)]
struct Options<'a> {
    pairs: Vec<(&'a str, &'a str, usize)>,
    flags: Vec<(&'a str, usize)>,
}

impl<'a> Options<'a> {
    fn parse(
        tokens: &[Token<'a>],
        allowed: &[&str],
        allowed_flags: &[&str],
    ) -> Result<Self, SpecError> {
        let mut o = Options::default();
        for tok in tokens {
            match tok.text.split_once('=') {
                Some((k, v)) => {
                    if !allowed.contains(&k) {
                        return Err(syntax(tok.column, format!("unknown key {k:?}")));
                    }
                    if o.pairs.iter().any(|(pk, _, _)| *pk == k) {
                        return Err(syntax(tok.column, format!("key {k:?} given twice")));
                    }
                    o.pairs.push((k, v, tok.column + k.len() + 1));
                }
                None => {
                    if !allowed_flags.contains(&tok.text) {
                        return Err(syntax(
                            tok.column,
                            format!("unexpected token {:?}", tok.text),
                        ));
                    }
                    o.flags.push((tok.text, tok.column));
                }
            }
        }
        Ok(o)
    }

    fn get(&self, key: &str) -> Option<(&'a str, usize)> {
        self.pairs
            .iter()
            .find(|(k, _, _)| *k == key)
            .map(|(_, v, c)| (*v, *c))
    }

    fn flag(&self, name: &str) -> bool {
        self.flags.iter().any(|(f, _)| *f == name)
    }

    fn int(&self, key: &str) -> Result<Option<BigInt>, SpecError> {
        match self.get(key) {
            None => Ok(None),
            Some((v, c)) => v
                .parse::<BigInt>()
                .map(Some)
                .map_err(|_| syntax(c, format!("{key} must be an integer, got {v:?}"))),
        }
    }

    fn required_int(&self, key: &str, kind_col: usize) -> Result<BigInt, SpecError> {
        self.int(key)?
            .ok_or_else(|| syntax(kind_col, format!("missing required key {key}=")))
    }

    fn scale(&self) -> Result<Option<Rational>, SpecError> {
        match self.get("scale") {
            None => Ok(None),
            Some((v, c)) => {
                let r = parse_rational(v).map_err(|e| syntax(c, e.to_string()))?;
                if r <= Rational::from_integer(BigInt::from(0)) {
                    return Err(syntax(c, "scale must be positive"));
                }
                Ok(Some(r))
            }
        }
    }

    fn side(&self) -> Result<BranchSide, SpecError> {
        match self.get("side") {
            None => Ok(BranchSide::C),
            Some((v, c)) => v.parse().map_err(|e: String| syntax(c, e)),
        }
    }
}

/// Parses a spec string or JSON triangle and builds the triangle.
pub fn parse_triangle(input: &str) -> Result<AnyTriangle, SpecError> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        return parse_json(input);
    }
    let tokens = tokenize(input);
    let Some(head) = tokens.first() else {
        return Err(syntax(0, "empty spec"));
    };
    let rest = &tokens[1..];
    let kind_col = head.column;
    let (tri, scale) = match head.text {
        "standard" => {
            let o = Options::parse(rest, &["triple", "p", "q", "axis", "scale"], &["barycentric"])?;
            let (tv, tc) = o
                .get("triple")
                .ok_or_else(|| syntax(kind_col, "missing required key triple="))?;
            let triple: MarkovTriple = tv.parse().map_err(|e: crate::markov::MarkovError| syntax(tc, e.to_string()))?;
            let apex = match o.get("p") {
                None => 0,
                Some((pv, pc)) => {
                    let p: BigInt = pv
                        .parse()
                        .map_err(|_| syntax(pc, format!("p must be an integer, got {pv:?}")))?;
                    triple
                        .entries()
                        .iter()
                        .position(|x| *x == p)
                        .ok_or_else(|| syntax(pc, format!("{p} is not an entry of {triple}")))?
                }
            };
            let mut spec = StandardPositionSpec::new(triple, apex);
            if let Some(q) = o.int("q")? {
                spec = spec.with_lift(q);
            }
            if let Some((av, ac)) = o.get("axis") {
                spec = spec.with_axis(match av {
                    "p2" => OnAxis::Second,
                    "p3" => OnAxis::Third,
                    _ => return Err(syntax(ac, "axis must be p2 or p3")),
                });
            }
            let mut t = standard_triangle(&spec)?;
            if o.flag("barycentric") {
                t = to_barycentric(&t)?;
            }
            (AnyTriangle::Rational(t), o.scale()?)
        }
        "limit" | "sequence" => {
            let mut keys = vec!["a", "q", "side", "scale"];
            if head.text == "sequence" {
                keys.push("n");
            }
            let o = Options::parse(rest, &keys, &["barycentric"])?;
            let a = o.required_int("a", kind_col)?;
            let q = o.int("q")?.unwrap_or_else(|| BigInt::from(1));
            let spec = LimitSpec::new(a, q)
                .side(o.side()?)
                .barycentric(o.flag("barycentric"));
            let t = if head.text == "limit" {
                AnyTriangle::Quadratic(limit_triangle(&spec)?)
            } else {
                let (nv, nc) = o
                    .get("n")
                    .ok_or_else(|| syntax(kind_col, "missing required key n="))?;
                let n: usize = nv
                    .parse()
                    .map_err(|_| syntax(nc, format!("n must be a nonnegative integer, got {nv:?}")))?;
                AnyTriangle::Rational(sequence_triangle(&spec, n)?)
            };
            (t, o.scale()?)
        }
        "open" => {
            let o = Options::parse(rest, &["a", "q", "b", "c", "scale"], &[])?;
            let a = o.required_int("a", kind_col)?;
            let q = o.required_int("q", kind_col)?;
            let b = o.required_int("b", kind_col)?;
            let c = o.required_int("c", kind_col)?;
            (
                AnyTriangle::Rational(open_problem_triangle(&a, &q, &b, &c)?),
                o.scale()?,
            )
        }
        "vertices" => {
            let body_start = head.column + head.text.len();
            (parse_vertices(&input[body_start..], body_start)?, None)
        }
        other => {
            return Err(syntax(
                kind_col,
                format!("unknown triangle kind {other:?}; expected standard, limit, sequence, open or vertices"),
            ))
        }
    };
    match scale {
        Some(k) => Ok(tri.dilate(&k)?),
        None => Ok(tri),
    }
}

fn parse_vertices(body: &str, offset: usize) -> Result<AnyTriangle, SpecError> {
    let mut groups = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in body.char_indices() {
        match ch {
            '(' => {
                if depth == 0 {
                    start = i + 1;
                }
                depth += 1;
            }
            ')' => {
                if depth == 0 {
                    return Err(syntax(offset + i, "unbalanced ')'"));
                }
                depth -= 1;
                if depth == 0 {
                    groups.push((&body[start..i], offset + start));
                }
            }
            c if depth == 0 && !c.is_whitespace() => {
                return Err(syntax(offset + i, "expected '(' starting a vertex"));
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(syntax(offset + body.len(), "unclosed '('"));
    }
    if groups.len() != 3 {
        return Err(syntax(
            offset,
            format!("expected 3 vertices, found {}", groups.len()),
        ));
    }
    let mut coords: Vec<(String, usize)> = Vec::new();
    for (g, col) in &groups {
        let mut level = 0usize;
        let mut split = None;
        for (i, ch) in g.char_indices() {
            match ch {
                '(' => level += 1,
                ')' => level = level.saturating_sub(1),
                ',' if level == 0 => {
                    if split.is_some() {
                        return Err(syntax(col + i, "a vertex has exactly two coordinates"));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(|| syntax(*col, "expected 'x, y'"))?;
        coords.push((g[..i].trim().to_string(), *col));
        coords.push((g[i + 1..].trim().to_string(), col + i + 1));
    }
    if coords.iter().any(|(c, _)| c.contains("sqrt")) {
        let mut parsed = Vec::new();
        let mut d: Option<BigInt> = None;
        for (c, col) in &coords {
            if c.contains("sqrt") {
                let q: QuadElem = c
                    .parse()
                    .map_err(|e: crate::arith::ArithError| syntax(*col, e.to_string()))?;
                if let Some(d0) = &d {
                    if d0 != q.discriminant() {
                        return Err(syntax(*col, "all coordinates must share one square root"));
                    }
                }
                d = Some(q.discriminant().clone());
                parsed.push(Ok(q));
            } else {
                parsed.push(Err(
                    parse_rational(c).map_err(|e| syntax(*col, e.to_string()))?
                ));
            }
        }
        let d = d.expect("at least one quadratic coordinate");
        let zero = QuadElem::from_rational(Rational::from_integer(BigInt::from(0)), d)
            .map_err(GeometryError::from)?;
        let vals: Vec<QuadElem> = parsed
            .into_iter()
            .map(|p| match p {
                Ok(q) => q,
                Err(r) => zero.embed(&r),
            })
            .collect();
        let pts: Vec<Point2<QuadElem>> = vals
            .chunks(2)
            .map(|c| Point2::new(c[0].clone(), c[1].clone()))
            .collect();
        let [a, b, c]: [Point2<QuadElem>; 3] = pts.try_into().expect("three vertices");
        Ok(AnyTriangle::Quadratic(Triangle::from_points(a, b, c)?))
    } else {
        let mut vals = Vec::new();
        for (c, col) in &coords {
            vals.push(parse_rational(c).map_err(|e| syntax(*col, e.to_string()))?);
        }
        let pts: Vec<Point2<Rational>> = vals
            .chunks(2)
            .map(|c| Point2::new(c[0].clone(), c[1].clone()))
            .collect();
        let [a, b, c]: [Point2<Rational>; 3] = pts.try_into().expect("three vertices");
        Ok(AnyTriangle::Rational(Triangle::from_points(a, b, c)?))
    }
}

fn parse_json(input: &str) -> Result<AnyTriangle, SpecError> {
    let v: Value = serde_json::from_str(input)
        .map_err(|e| syntax(e.column().saturating_sub(1), e.to_string()))?;
    let field = v.get("field").and_then(Value::as_str).unwrap_or("Q");
    if field == "Q" {
        Ok(AnyTriangle::Rational(Triangle::from_json(&v)?))
    } else {
        let verts = v
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| GeometryError::Json("missing 'vertices' array".into()))?;
        let mut d: Option<BigInt> = None;
        for vert in verts {
            for k in ["x", "y"] {
                if let Some(s) = vert.get(k).and_then(Value::as_str) {
                    if let Ok(q) = s.parse::<QuadElem>() {
                        d = Some(q.discriminant().clone());
                    }
                }
            }
        }
        let d = d.ok_or_else(|| GeometryError::Json("no quadratic coordinate found".into()))?;
        let zero = QuadElem::from_rational(Rational::from_integer(BigInt::from(0)), d)
            .map_err(GeometryError::from)?;
        let mut out = Vec::new();
        for vert in verts {
            let coord = |k: &str| -> Result<QuadElem, SpecError> {
                let s = vert.get(k).and_then(Value::as_str).ok_or_else(|| {
                    GeometryError::Json("vertex coordinates must be strings".into())
                })?;
                if s.contains("sqrt") {
                    s.parse::<QuadElem>()
                        .map_err(|e| SpecError::Geometry(e.into()))
                } else {
                    Ok(zero.embed(&parse_rational(s).map_err(|e| SpecError::Geometry(e.into()))?))
                }
            };
            let label = vert
                .get("label")
                .and_then(Value::as_str)
                .and_then(|s| s.parse::<BigInt>().ok());
            out.push(Vertex::new(label, Point2::new(coord("x")?, coord("y")?)));
        }
        let [a, b, c]: [Vertex<QuadElem>; 3] = out
            .try_into()
            .map_err(|_| GeometryError::Json("expected exactly three vertices".into()))?;
        Ok(AnyTriangle::Quadratic(Triangle::new([a, b, c])?))
    }
}
