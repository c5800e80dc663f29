//! Quantized points, segments, circles and figures.
//!
//! Coordinates live in the normalized frame `[-10, 10]²` and are stored as
//! integer hundredths, so every value the pipeline emits is an exact multiple
//! of `0.01` and equality, ordering and hashing are exact.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::GeomError;

/// Hundredths per normalized unit.
pub const SCALE: i32 = 100;
/// Largest coordinate magnitude, in hundredths.
pub const LIMIT: i32 = 10 * SCALE;

/// Rounds `v * 100` half away from zero.
///
/// Ties are decided on the decimal value, so a small nudge absorbs binary
/// representation error (`2.345` is stored as `2.34499…`).
pub(crate) fn round_hundredths(v: f64) -> Result<i64, GeomError> {
    if !v.is_finite() {
        return Err(GeomError::NonFinite);
    }
    let s = (v * f64::from(SCALE)).clamp(-1e12, 1e12);
    let m = (s.abs() + 0.5 + 1e-9).floor();
    Ok(if s < 0.0 { -(m as i64) } else { m as i64 })
}

/// Formats a hundredths value with exactly two decimals; `-` only for negatives.
pub(crate) fn fmt_hundredths(v: i64) -> String {
    let sign = if v < 0 { "-" } else { "" };
    let a = v.unsigned_abs();
    format!("{sign}{}.{:02}", a / 100, a % 100)
}

/// A point of the normalized frame, quantized to two decimals.
///
/// The derived ordering is lexicographic by `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    x: i32,
    y: i32,
}

impl Point {
    /// Builds a point from integer hundredths, rejecting values outside `[-10, 10]`.
    pub fn from_hundredths(x: i32, y: i32) -> Result<Self, GeomError> {
        if x.abs() > LIMIT || y.abs() > LIMIT {
            return Err(GeomError::OutOfRange);
        }
        Ok(Self { x, y })
    }

    /// Builds a point from coordinates that must already sit on the 0.01 grid
    /// (up to float noise) and inside the frame.
    pub fn new(x: f64, y: f64) -> Result<Self, GeomError> {
        let hx = round_hundredths(x)?;
        let hy = round_hundredths(y)?;
        if hx.abs() > i64::from(LIMIT) || hy.abs() > i64::from(LIMIT) {
            return Err(GeomError::OutOfRange);
        }
        Ok(Self {
            x: hx as i32,
            y: hy as i32,
        })
    }

    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub fn x(&self) -> f64 {
        f64::from(self.x) / f64::from(SCALE)
    }

    pub fn y(&self) -> f64 {
        f64::from(self.y) / f64::from(SCALE)
    }

    /// X coordinate in hundredths.
    pub fn hx(&self) -> i32 {
        self.x
    }

    /// Y coordinate in hundredths.
    pub fn hy(&self) -> i32 {
        self.y
    }

    /// Squared distance in hundredths², exact.
    pub fn dist2_hundredths(&self, other: &Point) -> i64 {
        let dx = i64::from(self.x - other.x);
        let dy = i64::from(self.y - other.y);
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.dist2_hundredths(other) as f64).sqrt() / f64::from(SCALE)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{})",
            fmt_hundredths(i64::from(self.x)),
            fmt_hundredths(i64::from(self.y))
        )
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x(), self.y()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[f64; 2]>::deserialize(d)?;
        Point::new(x, y).map_err(serde::de::Error::custom)
    }
}

/// Quantizes a raw point: round half away from zero to two decimals, then
/// clamp into `[-10, 10]²`.
pub fn quantize(x: f64, y: f64) -> Result<Point, GeomError> {
    let clamp = |v: i64| v.clamp(-i64::from(LIMIT), i64::from(LIMIT)) as i32;
    Ok(Point {
        x: clamp(round_hundredths(x)?),
        y: clamp(round_hundredths(y)?),
    })
}

/// An undirected line stroke with canonically ordered endpoints (`a < b`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    a: Point,
    b: Point,
}

/// Orders the endpoints lexicographically, rejecting zero-length segments.
pub fn canonicalize(p: Point, q: Point) -> Result<Segment, GeomError> {
    match p.cmp(&q) {
        std::cmp::Ordering::Less => Ok(Segment { a: p, b: q }),
        std::cmp::Ordering::Greater => Ok(Segment { a: q, b: p }),
        std::cmp::Ordering::Equal => Err(GeomError::DegenerateSegment),
    }
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Result<Self, GeomError> {
        canonicalize(p, q)
    }

    /// Canonical start (lexicographic minimum).
    pub fn a(&self) -> Point {
        self.a
    }

    /// Canonical end.
    pub fn b(&self) -> Point {
        self.b
    }

    /// Re-canonicalizes; segments are stored canonical so this is the identity.
    pub fn canonicalize(self) -> Self {
        self
    }

    pub fn length(&self) -> f64 {
        self.a.dist(&self.b)
    }

    /// Squared length in hundredths², exact.
    pub fn length2_hundredths(&self) -> i64 {
        self.a.dist2_hundredths(&self.b)
    }

    /// Orientation of the undirected line in `[0, 180)` degrees from `+x`.
    pub fn angle_deg(&self) -> f64 {
        let dx = f64::from(self.b.x - self.a.x);
        let dy = f64::from(self.b.y - self.a.y);
        let mut deg = dy.atan2(dx).to_degrees();
        if deg < 0.0 {
            deg += 180.0;
        }
        if deg >= 180.0 {
            deg -= 180.0;
        }
        deg
    }

    pub fn midpoint(&self) -> (f64, f64) {
        ((self.a.x() + self.b.x()) / 2.0, (self.a.y() + self.b.y()) / 2.0)
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Segment {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [p, q] = <[Point; 2]>::deserialize(d)?;
        canonicalize(p, q).map_err(serde::de::Error::custom)
    }
}

/// A circle whose full extent lies inside the frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circle {
    center: Point,
    radius: i32,
}

impl Circle {
    /// Builds a circle from a center and a radius in hundredths.
    pub fn from_hundredths(center: Point, radius: i32) -> Result<Self, GeomError> {
        if radius <= 0 {
            return Err(GeomError::InvalidRadius);
        }
        let fits = |c: i32| c - radius >= -LIMIT && c + radius <= LIMIT;
        if !fits(center.x) || !fits(center.y) {
            return Err(GeomError::CircleOutOfRange);
        }
        Ok(Self { center, radius })
    }

    pub fn new(center: Point, radius: f64) -> Result<Self, GeomError> {
        let r = round_hundredths(radius)?;
        let r = i32::try_from(r).map_err(|_| GeomError::CircleOutOfRange)?;
        Self::from_hundredths(center, r)
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn radius(&self) -> f64 {
        f64::from(self.radius) / f64::from(SCALE)
    }

    pub fn radius_hundredths(&self) -> i32 {
        self.radius
    }
}

impl fmt::Display for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})",
            fmt_hundredths(i64::from(self.center.x)),
            fmt_hundredths(i64::from(self.center.y)),
            fmt_hundredths(i64::from(self.radius))
        )
    }
}

impl Serialize for Circle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.center.x(), self.center.y(), self.radius()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Circle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y, r] = <[f64; 3]>::deserialize(d)?;
        let c = Point::new(x, y).map_err(serde::de::Error::custom)?;
        Circle::new(c, r).map_err(serde::de::Error::custom)
    }
}

/// Vertex labels, letter to point.
pub type Labels = BTreeMap<char, Point>;

/// A whole geometric scene: sorted unique segments, sorted unique circles and
/// optional vertex labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFigure")]
pub struct Figure {
    segments: Vec<Segment>,
    circles: Vec<Circle>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    labels: Labels,
}

#[derive(Deserialize)]
struct RawFigure {
    #[serde(default)]
    segments: Vec<Segment>,
    #[serde(default)]
    circles: Vec<Circle>,
    #[serde(default)]
    labels: Labels,
}

impl TryFrom<RawFigure> for Figure {
    type Error = GeomError;

    fn try_from(raw: RawFigure) -> Result<Self, Self::Error> {
        Figure::new(raw.segments, raw.circles, raw.labels)
    }
}

impl Figure {
    /// Sorts and deduplicates segments and circles and validates labels.
    pub fn new(
        mut segments: Vec<Segment>,
        mut circles: Vec<Circle>,
        labels: Labels,
    ) -> Result<Self, GeomError> {
        segments.sort_unstable();
        segments.dedup();
        circles.sort_unstable();
        circles.dedup();
        for (&letter, p) in &labels {
            if !letter.is_ascii_uppercase() {
                return Err(GeomError::InvalidLabel(letter));
            }
            if !segments.iter().any(|s| s.a == *p || s.b == *p) {
                return Err(GeomError::UnboundLabel(letter));
            }
        }
        Ok(Self {
            segments,
            circles,
            labels,
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn circles(&self) -> &[Circle] {
        &self.circles
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    /// Sorted, unique segment endpoints.
    pub fn vertices(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self.segments.iter().flat_map(|s| [s.a, s.b]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The same figure without labels.
    pub fn without_labels(&self) -> Self {
        Self {
            segments: self.segments.clone(),
            circles: self.circles.clone(),
            labels: Labels::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty() && self.circles.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    #[test]
    fn canonicalize_orders_endpoints() {
        let s = canonicalize(p(3.0, 1.0), p(0.0, 0.0)).unwrap();
        assert_eq!((s.a(), s.b()), (p(0.0, 0.0), p(3.0, 1.0)));
        let s = canonicalize(p(0.0, 0.0), p(3.0, 1.0)).unwrap();
        assert_eq!((s.a(), s.b()), (p(0.0, 0.0), p(3.0, 1.0)));
        let s = canonicalize(p(2.0, 4.0), p(2.0, -5.0)).unwrap();
        assert_eq!((s.a(), s.b()), (p(2.0, -5.0), p(2.0, 4.0)));
        assert_eq!(s.canonicalize(), s);
    }

    #[test]
    fn degenerate_segment_rejected() {
        assert_eq!(
            canonicalize(p(1.0, 1.0), p(1.0, 1.0)),
            Err(GeomError::DegenerateSegment)
        );
    }

    #[test]
    fn lengths() {
        assert_eq!(Segment::new(p(0.0, 0.0), p(3.0, 4.0)).unwrap().length(), 5.0);
        // (0,0)-(12,0) leaves the frame; the same length shifted into range.
        assert_eq!(Segment::new(p(-6.0, 0.0), p(6.0, 0.0)).unwrap().length(), 12.0);
        let s = Segment::new(p(-1.5, 2.0), p(-1.5, 2.01)).unwrap();
        assert_eq!(s.length(), 0.01);
    }

    #[test]
    fn angles() {
        let o = p(0.0, 0.0);
        assert_eq!(Segment::new(o, p(1.0, 0.0)).unwrap().angle_deg(), 0.0);
        assert_eq!(Segment::new(o, p(0.0, 1.0)).unwrap().angle_deg(), 90.0);
        assert!((Segment::new(o, p(1.0, 1.0)).unwrap().angle_deg() - 45.0).abs() < 1e-12);
        assert!((Segment::new(o, p(-1.0, 1.0)).unwrap().angle_deg() - 135.0).abs() < 1e-12);
    }

    #[test]
    fn quantize_examples() {
        assert_eq!(quantize(1.234, -2.345).unwrap(), p(1.23, -2.35));
        assert_eq!(quantize(0.005, 0.0).unwrap(), p(0.01, 0.0));
        assert_eq!(quantize(10.004, -10.004).unwrap(), p(10.0, -10.0));
        assert_eq!(quantize(-0.004, 0.0).unwrap(), p(0.0, 0.0));
        assert_eq!(quantize(f64::NAN, 0.0), Err(GeomError::NonFinite));
        assert_eq!(quantize(0.0, f64::INFINITY), Err(GeomError::NonFinite));
    }

    #[test]
    fn display_two_decimals() {
        assert_eq!(p(-0.5, 10.0).to_string(), "(-0.50,10.00)");
        let c = Circle::new(p(1.5, -2.0), 3.0).unwrap();
        assert_eq!(c.to_string(), "(1.50,-2.00,3.00)");
    }

    #[test]
    fn circle_range_checked() {
        assert_eq!(Circle::new(p(8.0, 0.0), 3.0), Err(GeomError::CircleOutOfRange));
        assert_eq!(Circle::new(p(0.0, 0.0), 0.0), Err(GeomError::InvalidRadius));
        assert!(Circle::new(p(0.0, 0.0), 10.0).is_ok());
    }

    #[test]
    fn figure_sorts_and_dedups() {
        let s1 = Segment::new(p(1.0, 0.0), p(2.0, 0.0)).unwrap();
        let s2 = Segment::new(p(0.0, 0.0), p(2.0, 0.0)).unwrap();
        let f = Figure::new(vec![s1, s2, s1], vec![], Labels::new()).unwrap();
        assert_eq!(f.segments(), &[s2, s1]);
    }

    #[test]
    fn labels_must_bind_to_endpoints() {
        let s = Segment::new(p(1.0, 0.0), p(2.0, 0.0)).unwrap();
        let mut labels = Labels::new();
        labels.insert('A', p(1.0, 0.0));
        assert!(Figure::new(vec![s], vec![], labels.clone()).is_ok());
        labels.insert('B', p(5.0, 5.0));
        assert_eq!(
            Figure::new(vec![s], vec![], labels),
            Err(GeomError::UnboundLabel('B'))
        );
        let mut bad = Labels::new();
        bad.insert('a', p(1.0, 0.0));
        assert_eq!(Figure::new(vec![s], vec![], bad), Err(GeomError::InvalidLabel('a')));
    }

    #[test]
    fn figure_json_round_trip() {
        let s = Segment::new(p(1.25, 0.0), p(-2.0, 3.5)).unwrap();
        let c = Circle::new(p(0.0, 0.0), 2.5).unwrap();
        let mut labels = Labels::new();
        labels.insert('A', p(1.25, 0.0));
        let f = Figure::new(vec![s], vec![c], labels).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"{"segments":[[[-2.0,3.5],[1.25,0.0]]],"circles":[[0.0,0.0,2.5]],"labels":{"A":[1.25,0.0]}}"#
        );
        let back: Figure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"segments":[[[1,1],[1,1]]]}"#;
        assert!(serde_json::from_str::<Figure>(bad).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn point() -> impl Strategy<Value = Point> {
            (-LIMIT..=LIMIT, -LIMIT..=LIMIT).prop_map(|(x, y)| Point::from_hundredths(x, y).unwrap())
        }

        proptest! {
            #[test]
            fn canonicalize_idempotent_and_order_free(p in point(), q in point()) {
                prop_assume!(p != q);
                let s = canonicalize(p, q).unwrap();
                let r = canonicalize(q, p).unwrap();
                prop_assert_eq!(s, r);
                prop_assert_eq!(canonicalize(s.a(), s.b()).unwrap(), s);
                prop_assert!(s.a() < s.b());
                prop_assert_eq!(s.length(), r.length());
                prop_assert!((0.0..180.0).contains(&s.angle_deg()));
            }

            #[test]
            fn quantize_is_idempotent(x in -12.0f64..12.0, y in -12.0f64..12.0) {
                let q = quantize(x, y).unwrap();
                prop_assert_eq!(quantize(q.x(), q.y()).unwrap(), q);
                prop_assert!(q.hx().abs() <= LIMIT && q.hy().abs() <= LIMIT);
            }

            #[test]
            fn sorted_dedup_is_fixed_point(pts in prop::collection::vec((point(), point()), 0..12)) {
                let segs: Vec<Segment> = pts.iter().filter_map(|(p, q)| canonicalize(*p, *q).ok()).collect();
                let f = Figure::new(segs, vec![], Labels::new()).unwrap();
                let g = Figure::new(f.segments().to_vec(), vec![], Labels::new()).unwrap();
                prop_assert_eq!(f, g);
            }
        }
    }
}
