//! Perceptual-ruler subdivision of a segment into a flow chain, and
//! longitudinal jitter of the chain's gaze points.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CodecError;
use crate::geometry::{fmt_hundredths, round_hundredths, Point, Segment, LIMIT};

/// Maximum single-step tracing distance. `Infinite` is the two-point baseline.
///
/// Finite rulers are held in hundredths so the step count is computed exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PerceptualRuler {
    Finite(u32),
    Infinite,
}

impl PerceptualRuler {
    pub fn finite(d: f64) -> Result<Self, CodecError> {
        if !(d.is_finite() && d > 0.0) {
            return Err(CodecError::Ruler(format!("{d} is not a positive length")));
        }
        let h = round_hundredths(d).map_err(|e| CodecError::Ruler(e.to_string()))?;
        if h <= 0 || h > i64::from(u32::MAX) {
            return Err(CodecError::Ruler(format!("{d} is not representable in hundredths")));
        }
        Ok(Self::Finite(h as u32))
    }

    /// Ruler length in normalized units; `None` when infinite.
    pub fn length(&self) -> Option<f64> {
        match self {
            Self::Finite(h) => Some(f64::from(*h) / 100.0),
            Self::Infinite => None,
        }
    }

    /// Number of sub-lines `ceil(|l| / d)` for a segment; 1 for the baseline.
    pub fn steps(&self, seg: &Segment) -> usize {
        match *self {
            Self::Infinite => 1,
            Self::Finite(d) => {
                let l2 = seg.length2_hundredths() as i128;
                let d = i128::from(d);
                let mut n = ((l2 as f64).sqrt() / d as f64).ceil().max(1.0) as i128;
                // Settle float error exactly: smallest n with (n·d)² ≥ l².
                while n > 1 && (n - 1) * (n - 1) * d * d >= l2 {
                    n -= 1;
                }
                while n * n * d * d < l2 {
                    n += 1;
                }
                n as usize
            }
        }
    }
}

impl fmt::Display for PerceptualRuler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinite => f.write_str("inf"),
            Self::Finite(h) => {
                let s = fmt_hundredths(i64::from(*h));
                f.write_str(s.trim_end_matches('0').trim_end_matches('.'))
            }
        }
    }
}

impl FromStr for PerceptualRuler {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Self::Infinite),
            other => {
                let d: f64 = other
                    .parse()
                    .map_err(|_| CodecError::Ruler(format!("cannot parse {s:?}")))?;
                if d.is_infinite() && d > 0.0 {
                    return Ok(Self::Infinite);
                }
                Self::finite(d)
            }
        }
    }
}

impl Serialize for PerceptualRuler {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.length() {
            Some(d) => s.serialize_f64(d),
            None => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PerceptualRuler {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => PerceptualRuler::finite(v),
            Repr::Text(t) => t.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// One segment traced as `start -> gaze points -> end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowChain {
    pub points: Vec<Point>,
    pub ruler: PerceptualRuler,
}

impl FlowChain {
    pub fn start(&self) -> Option<Point> {
        self.points.first().copied()
    }

    pub fn end(&self) -> Option<Point> {
        self.points.last().copied()
    }

    /// Interior points, excluding start and end.
    pub fn gaze_points(&self) -> &[Point] {
        match self.points.len() {
            0..=2 => &[],
            n => &self.points[1..n - 1],
        }
    }

    /// Number of sub-lines.
    pub fn steps(&self) -> usize {
        self.points.len().saturating_sub(1)
    }
}

/// Expands a segment into a flow chain running from its canonical start to
/// its end, with `ceil(length / d)` sub-lines of length `d` except the last.
pub fn subdivide(seg: &Segment, ruler: PerceptualRuler) -> FlowChain {
    let (a, b) = (seg.a(), seg.b());
    let n = ruler.steps(seg);
    let mut points = Vec::with_capacity(n + 1);
    points.push(a);
    if let PerceptualRuler::Finite(d) = ruler {
        let len = (seg.length2_hundredths() as f64).sqrt();
        let ux = f64::from(b.hx() - a.hx()) / len;
        let uy = f64::from(b.hy() - a.hy()) / len;
        for i in 1..n {
            let t = i as f64 * f64::from(d);
            points.push(on_grid(f64::from(a.hx()) + t * ux, f64::from(a.hy()) + t * uy));
        }
    }
    points.push(b);
    FlowChain { points, ruler }
}

/// Rounds a position given in hundredths onto the grid.
fn on_grid(hx: f64, hy: f64) -> Point {
    let r = |v: f64| {
        let m = (v.abs() + 0.5 + 1e-9).floor();
        let m = if v < 0.0 { -m } else { m };
        (m as i32).clamp(-LIMIT, LIMIT)
    };
    Point::from_hundredths(r(hx), r(hy)).expect("clamped into range")
}

const JITTER_ATTEMPTS: usize = 8;

/// Displaces every gaze point along the chain's line by a uniform draw of at
/// most `max_frac * L`, where `L` is the chain's endpoint distance.
///
/// Endpoints are untouched. Each draw is restricted so the point stays strictly
/// between its (already jittered) predecessor and its original successor,
/// which keeps the order along the segment and keeps points off the endpoints.
/// The bound is checked after quantization; a draw that fails it falls back
/// to the original point.
pub fn jitter_gaze<R: Rng + ?Sized>(
    chain: &FlowChain,
    rng: &mut R,
    max_frac: f64,
) -> Result<FlowChain, CodecError> {
    if !(0.0..=0.1).contains(&max_frac) {
        return Err(CodecError::Jitter(max_frac.to_string()));
    }
    let pts = &chain.points;
    if pts.len() <= 2 || max_frac == 0.0 {
        return Ok(chain.clone());
    }
    let (a, b) = (pts[0], pts[pts.len() - 1]);
    let dir = (i64::from(b.hx() - a.hx()), i64::from(b.hy() - a.hy()));
    let l2 = dir.0 * dir.0 + dir.1 * dir.1;
    if l2 == 0 {
        return Ok(chain.clone());
    }
    let len = (l2 as f64).sqrt();
    let (ux, uy) = (dir.0 as f64 / len, dir.1 as f64 / len);
    let bound = max_frac * len;
    let bound2 = max_frac * max_frac * l2 as f64;
    // Projection onto a->b, scaled by len (exact in integers).
    let proj = |p: &Point| i64::from(p.hx() - a.hx()) * dir.0 + i64::from(p.hy() - a.hy()) * dir.1;

    let mut out = pts.clone();
    for i in 1..pts.len() - 1 {
        let orig = pts[i];
        let prev = proj(&out[i - 1]);
        let next = proj(&pts[i + 1]);
        let here = proj(&orig);
        let lo = (-bound).max((prev - here) as f64 / len);
        let hi = bound.min((next - here) as f64 / len);
        if lo >= hi {
            continue;
        }
        for _ in 0..JITTER_ATTEMPTS {
            let u = rng.random_range(lo..hi);
            let c = on_grid(f64::from(orig.hx()) + u * ux, f64::from(orig.hy()) + u * uy);
            let pc = proj(&c);
            if (orig.dist2_hundredths(&c) as f64) <= bound2 && pc > prev && pc < next && c != a && c != b {
                out[i] = c;
                break;
            }
        }
    }
    Ok(FlowChain {
        points: out,
        ruler: chain.ruler,
    })
}
