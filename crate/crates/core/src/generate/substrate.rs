//! Base quadrilaterals.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::Rng;

use super::config::{GenConfig, QuadKind};
use super::shape::*;
use super::Draft;
use crate::error::GenError;
use crate::geometry::{quantize, Point};

/// Rejection-sampling cap for fitting a substrate in range.
pub const SUBSTRATE_ATTEMPTS: usize = 100;

const MIN_SIDE: f64 = 1.0;
const MIN_ANGLE_DEG: f64 = 15.0;

/// A quadrilateral in its local frame, before rotation and translation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadShape {
    pub kind: QuadKind,
    pub vertices: [V2; 4],
}

impl QuadShape {
    pub fn square(side: f64) -> Self {
        let h = side / 2.0;
        Self {
            kind: QuadKind::Square,
            vertices: [(-h, -h), (h, -h), (h, h), (-h, h)],
        }
    }

    pub fn rectangle(w: f64, h: f64) -> Self {
        let (a, b) = (w / 2.0, h / 2.0);
        Self {
            kind: QuadKind::Rectangle,
            vertices: [(-a, -b), (a, -b), (a, b), (-a, b)],
        }
    }

    /// Base `b` along x, slanted side of length `c` at `angle` radians.
    pub fn parallelogram(b: f64, c: f64, angle: f64) -> Self {
        let s = (c * angle.cos(), c * angle.sin());
        Self {
            kind: QuadKind::Parallelogram,
            vertices: [(0.0, 0.0), (b, 0.0), add((b, 0.0), s), s],
        }
    }

    pub fn rhombus(side: f64, angle: f64) -> Self {
        Self {
            kind: QuadKind::Rhombus,
            ..Self::parallelogram(side, side, angle)
        }
    }

    /// Bottom base `b1`, top base `b2` at height `h`, top shifted by `offset`.
    pub fn trapezoid(b1: f64, b2: f64, h: f64, offset: f64) -> Self {
        Self {
            kind: QuadKind::Trapezoid,
            vertices: [(0.0, 0.0), (b1, 0.0), (offset + b2, h), (offset, h)],
        }
    }

    pub fn isosceles_trapezoid(b1: f64, b2: f64, h: f64) -> Self {
        Self {
            kind: QuadKind::IsoscelesTrapezoid,
            ..Self::trapezoid(b1, b2, h, (b1 - b2) / 2.0)
        }
    }

    pub fn right_trapezoid(b1: f64, b2: f64, h: f64) -> Self {
        Self {
            kind: QuadKind::RightTrapezoid,
            ..Self::trapezoid(b1, b2, h, 0.0)
        }
    }

    /// Draws a shape of the given kind with sizes from `side_range`.
    pub fn sample<R: Rng + ?Sized>(kind: QuadKind, cfg: &GenConfig, rng: &mut R) -> Self {
        let [lo, hi] = cfg.side_range;
        let side = |rng: &mut R| if lo < hi { rng.random_range(lo..=hi) } else { lo };
        match kind {
            QuadKind::Square => Self::square(side(rng)),
            QuadKind::Rectangle => {
                let w = side(rng);
                let mut h = side(rng);
                for _ in 0..8 {
                    if (w - h).abs() >= 0.15 * w.max(h) {
                        break;
                    }
                    h = side(rng);
                }
                if (w - h).abs() < 0.15 * w.max(h) {
                    h = if w * 0.6 >= lo { w * 0.6 } else { w / 0.6 };
                }
                Self::rectangle(w, h)
            }
            QuadKind::Parallelogram => {
                let angle = rng.random_range(50f64..80.0).to_radians();
                Self::parallelogram(side(rng), side(rng) * 0.8, angle)
            }
            QuadKind::Rhombus => {
                let angle = rng.random_range(45f64..80.0).to_radians();
                Self::rhombus(side(rng), angle)
            }
            QuadKind::Trapezoid => {
                let (b1, h) = (side(rng), side(rng) * 0.8);
                let b2 = b1 * rng.random_range(0.35..0.8);
                let span = (-0.25 * b1, b1 - b2 + 0.25 * b1);
                let mut offset = rng.random_range(span.0..span.1);
                for _ in 0..8 {
                    let near_special = offset.abs() < 0.08 * b1 || (offset - (b1 - b2) / 2.0).abs() < 0.08 * b1;
                    if !near_special {
                        break;
                    }
                    offset = rng.random_range(span.0..span.1);
                }
                Self::trapezoid(b1, b2, h, offset)
            }
            QuadKind::IsoscelesTrapezoid => {
                let (b1, h) = (side(rng), side(rng) * 0.8);
                Self::isosceles_trapezoid(b1, b1 * rng.random_range(0.35..0.8), h)
            }
            QuadKind::RightTrapezoid => {
                let (b1, h) = (side(rng), side(rng) * 0.8);
                Self::right_trapezoid(b1, b1 * rng.random_range(0.35..0.8), h)
            }
            QuadKind::Arbitrary => {
                let s = side(rng);
                let base = rng.random_range(0.0..TAU);
                let mut vertices = [(0.0, 0.0); 4];
                for (k, v) in vertices.iter_mut().enumerate() {
                    let a = base + k as f64 * FRAC_PI_2 + rng.random_range(-PI / 6.0..PI / 6.0);
                    let r = s * rng.random_range(0.45..0.85);
                    *v = (r * a.cos(), r * a.sin());
                }
                Self {
                    kind: QuadKind::Arbitrary,
                    vertices,
                }
            }
        }
    }

    /// Centers the shape on its vertex centroid, rotates it and moves it to
    /// `offset`, then quantizes. `None` when it leaves the frame or quantization
    /// breaks it.
    pub fn place(&self, rotation: f64, offset: V2) -> Option<[Point; 4]> {
        let c = centroid(&self.vertices);
        let mut out = [Point::ORIGIN; 4];
        for (o, &v) in out.iter_mut().zip(&self.vertices) {
            let p = add(rotate(sub(v, c), rotation), offset);
            if p.0.abs() > 10.0 || p.1.abs() > 10.0 {
                return None;
            }
            *o = quantize(p.0, p.1).ok()?;
        }
        let poly: Vec<V2> = out.iter().map(|&p| v(p)).collect();
        well_formed(&poly, self.kind != QuadKind::Arbitrary).then_some(out)
    }
}

fn well_formed(poly: &[V2], require_convex: bool) -> bool {
    let n = poly.len();
    for i in 0..n {
        let (prev, cur, next) = (poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]);
        if norm(sub(next, cur)) < MIN_SIDE {
            return false;
        }
        let (e1, e2) = (sub(prev, cur), sub(next, cur));
        let ang = (dot(e1, e2) / (norm(e1) * norm(e2))).clamp(-1.0, 1.0).acos().to_degrees();
        if ang < MIN_ANGLE_DEG {
            return false;
        }
    }
    is_simple(poly) && (!require_convex || is_convex(poly))
}

/// Picks a kind, draws a shape and places it with a random rotation and
/// translation, retrying until it fits.
pub fn sample_substrate<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Result<Draft, GenError> {
    if cfg.quad_types.is_empty() {
        return Err(GenError::Config("quad_types is empty".into()));
    }
    for _ in 0..SUBSTRATE_ATTEMPTS {
        let kind = cfg.quad_types[rng.random_range(0..cfg.quad_types.len())];
        let shape = QuadShape::sample(kind, cfg, rng);
        let rotation = rng.random_range(0.0..TAU);
        let offset = (rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
        if let Some(vertices) = shape.place(rotation, offset) {
            return Ok(Draft::from_polygon(kind, &vertices));
        }
    }
    Err(GenError::SubstrateRejected(SUBSTRATE_ATTEMPTS))
}
