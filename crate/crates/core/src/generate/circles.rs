//! Inscribed and circumscribed circles of the base polygon.

use super::config::QuadKind;
use super::shape::*;
use crate::geometry::{quantize, Circle, Point};

/// Smallest circle containing every point, as `(center, radius)`.
///
/// Brute force over two- and three-point support sets; fine for the handful
/// of vertices a substrate has.
pub fn min_enclosing(points: &[V2]) -> Option<(V2, f64)> {
    let covers = |c: V2, r: f64| points.iter().all(|&p| norm(sub(p, c)) <= r * (1.0 + 1e-12) + 1e-12);
    let mut best: Option<(V2, f64)> = None;
    let mut consider = |c: V2, r: f64| {
        if covers(c, r) && best.is_none_or(|(_, br)| r < br) {
            best = Some((c, r));
        }
    };
    match points.len() {
        0 => return None,
        1 => return Some((points[0], 0.0)),
        _ => {}
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let c = lerp(points[i], points[j], 0.5);
            consider(c, norm(sub(points[i], c)));
            for k in j + 1..points.len() {
                if let Some(c) = circumcenter(points[i], points[j], points[k]) {
                    consider(c, norm(sub(points[i], c)));
                }
            }
        }
    }
    best
}

fn circumcenter(a: V2, b: V2, c: V2) -> Option<V2> {
    let d = 2.0 * (a.0 * (b.1 - c.1) + b.0 * (c.1 - a.1) + c.0 * (a.1 - b.1));
    if d.abs() < 1e-12 {
        return None;
    }
    let sq = |p: V2| dot(p, p);
    let ux = (sq(a) * (b.1 - c.1) + sq(b) * (c.1 - a.1) + sq(c) * (a.1 - b.1)) / d;
    let uy = (sq(a) * (c.0 - b.0) + sq(b) * (a.0 - c.0) + sq(c) * (b.0 - a.0)) / d;
    Some((ux, uy))
}

/// Center of the largest circle inside a simple polygon, found by a grid
/// search over the bounding box that is refined around the best cell until
/// the step drops below `tol`.
pub fn max_inscribed(poly: &[V2], tol: f64) -> Option<(V2, f64)> {
    if poly.len() < 3 {
        return None;
    }
    let (mut lo, mut hi) = (poly[0], poly[0]);
    for p in poly {
        lo = (lo.0.min(p.0), lo.1.min(p.1));
        hi = (hi.0.max(p.0), hi.1.max(p.1));
    }
    const GRID: usize = 24;
    let mut best = (centroid(poly), f64::NEG_INFINITY);
    let mut half = ((hi.0 - lo.0) / 2.0, (hi.1 - lo.1) / 2.0);
    let mut center = lerp(lo, hi, 0.5);
    while half.0.max(half.1) * 2.0 / GRID as f64 > tol * 0.1 {
        for i in 0..=GRID {
            for j in 0..=GRID {
                let p = (
                    center.0 - half.0 + 2.0 * half.0 * i as f64 / GRID as f64,
                    center.1 - half.1 + 2.0 * half.1 * j as f64 / GRID as f64,
                );
                let d = signed_boundary_distance(poly, p);
                if d > best.1 {
                    best = (p, d);
                }
            }
        }
        center = best.0;
        half = (half.0 / 4.0, half.1 / 4.0);
    }
    (best.1 > 0.0).then_some(best)
}

/// Exact incircle of a tangential quadrilateral: centered at the vertex mean,
/// touching the nearest side.
fn tangential_incircle(poly: &[V2]) -> (V2, f64) {
    let c = centroid(poly);
    let n = poly.len();
    let r = (0..n)
        .map(|i| dist_to_segment(c, poly[i], poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min);
    (c, r)
}

/// Inscribed circle of the base polygon, rounded inward so it stays inside.
pub fn inscribed_circle(polygon: &[Point], kind: QuadKind) -> Option<Circle> {
    let poly: Vec<V2> = polygon.iter().map(|&p| v(p)).collect();
    let (c, _) = if kind.is_tangential() && poly.len() == 4 {
        tangential_incircle(&poly)
    } else {
        max_inscribed(&poly, 0.01)?
    };
    let center = quantize(c.0, c.1).ok()?;
    let r = signed_boundary_distance(&poly, v(center));
    let r = (r * 100.0 + 1e-6).floor() as i32;
    Circle::from_hundredths(center, r).ok()
}

/// Minimum enclosing circle of the base vertices, rounded outward so every
/// vertex stays inside.
pub fn circumscribed_circle(polygon: &[Point]) -> Option<Circle> {
    let poly: Vec<V2> = polygon.iter().map(|&p| v(p)).collect();
    let (c, _) = min_enclosing(&poly)?;
    let center = quantize(c.0, c.1).ok()?;
    let r2 = polygon.iter().map(|p| p.dist2_hundredths(&center)).max()?;
    let mut r = (r2 as f64).sqrt().ceil() as i64;
    while r * r < r2 {
        r += 1;
    }
    Circle::from_hundredths(center, i32::try_from(r).ok()?).ok()
}
