//! Small float-vector helpers for building and checking polygons.

use crate::geometry::Point;

pub type V2 = (f64, f64);

pub fn v(p: Point) -> V2 {
    (p.x(), p.y())
}

pub fn sub(a: V2, b: V2) -> V2 {
    (a.0 - b.0, a.1 - b.1)
}

pub fn add(a: V2, b: V2) -> V2 {
    (a.0 + b.0, a.1 + b.1)
}

pub fn scale(a: V2, k: f64) -> V2 {
    (a.0 * k, a.1 * k)
}

pub fn dot(a: V2, b: V2) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

pub fn cross(a: V2, b: V2) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

pub fn norm(a: V2) -> f64 {
    dot(a, a).sqrt()
}

pub fn lerp(a: V2, b: V2, t: f64) -> V2 {
    add(a, scale(sub(b, a), t))
}

pub fn rotate(a: V2, rad: f64) -> V2 {
    let (s, c) = rad.sin_cos();
    (a.0 * c - a.1 * s, a.0 * s + a.1 * c)
}

pub fn centroid(pts: &[V2]) -> V2 {
    let n = pts.len() as f64;
    let s = pts.iter().fold((0.0, 0.0), |acc, &p| add(acc, p));
    scale(s, 1.0 / n)
}

/// Distance from `p` to the closed segment `a b`.
pub fn dist_to_segment(p: V2, a: V2, b: V2) -> f64 {
    let ab = sub(b, a);
    let l2 = dot(ab, ab);
    if l2 == 0.0 {
        return norm(sub(p, a));
    }
    let t = (dot(sub(p, a), ab) / l2).clamp(0.0, 1.0);
    norm(sub(p, lerp(a, b, t)))
}

/// Distance from `p` to the infinite line through `a b`.
pub fn dist_to_line(p: V2, a: V2, b: V2) -> f64 {
    let ab = sub(b, a);
    cross(ab, sub(p, a)).abs() / norm(ab)
}

/// Proper or touching intersection of two closed segments.
pub fn segments_intersect(p1: V2, p2: V2, q1: V2, q2: V2) -> bool {
    let d1 = cross(sub(q2, q1), sub(p1, q1));
    let d2 = cross(sub(q2, q1), sub(p2, q1));
    let d3 = cross(sub(p2, p1), sub(q1, p1));
    let d4 = cross(sub(p2, p1), sub(q2, p1));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: V2, b: V2, c: V2, d: f64| {
        d == 0.0 && c.0 >= a.0.min(b.0) && c.0 <= a.0.max(b.0) && c.1 >= a.1.min(b.1) && c.1 <= a.1.max(b.1)
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

/// True when no two non-adjacent edges of the closed polygon meet.
pub fn is_simple(poly: &[V2]) -> bool {
    let n = poly.len();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            if segments_intersect(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// True when all turns have the same strict sign.
pub fn is_convex(poly: &[V2]) -> bool {
    let n = poly.len();
    let signs: Vec<f64> = (0..n)
        .map(|i| {
            let e1 = sub(poly[(i + 1) % n], poly[i]);
            let e2 = sub(poly[(i + 2) % n], poly[(i + 1) % n]);
            cross(e1, e2)
        })
        .collect();
    signs.iter().all(|&s| s > 0.0) || signs.iter().all(|&s| s < 0.0)
}

/// Even-odd point-in-polygon test.
pub fn contains(poly: &[V2], p: V2) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (poly[i], poly[j]);
        if (a.1 > p.1) != (b.1 > p.1) && p.0 < (b.0 - a.0) * (p.1 - a.1) / (b.1 - a.1) + a.0 {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// Distance to the boundary, positive inside and negative outside.
pub fn signed_boundary_distance(poly: &[V2], p: V2) -> f64 {
    let n = poly.len();
    let d = (0..n)
        .map(|i| dist_to_segment(p, poly[i], poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min);
    if contains(poly, p) {
        d
    } else {
        -d
    }
}
