//! Vertex deletion and point addition.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index::sample;
use rand::Rng;

use super::config::GenConfig;
use super::shape::*;
use super::Draft;
use crate::geometry::{quantize, Point};

/// Where an added point sits relative to its host side `a b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Placement {
    Midpoint,
    /// `a + (b - a) / 3` or `a + 2 (b - a) / 3`.
    Trisection(u8),
    /// Uniform along the side, `t` in `(0, 1)`.
    Uniform(f64),
    /// Past `b` by `t` side lengths when `beyond_b`, else past `a`.
    Extension { beyond_b: bool, t: f64 },
}

const PLACE_ATTEMPTS: usize = 10;
/// Added points keep at least this distance from every existing vertex.
const MIN_SPACING: f64 = 0.3;
/// Points closer than this to a line count as on it.
const COLLINEAR_TOL: f64 = 0.05;
/// Shortest extension, as a fraction of the side.
const MIN_EXTENSION: f64 = 0.05;

impl Placement {
    fn sample<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Self {
        let w = cfg.placement;
        let om = cfg.special_weight;
        let weights = [
            om * w.midpoint,
            om * w.trisection / 2.0,
            om * w.trisection / 2.0,
            w.uniform,
            if cfg.max_extension > MIN_EXTENSION { w.extension } else { 0.0 },
        ];
        let dist = WeightedIndex::new(weights).expect("weights validated by config");
        match dist.sample(rng) {
            0 => Placement::Midpoint,
            1 => Placement::Trisection(1),
            2 => Placement::Trisection(2),
            3 => Placement::Uniform(rng.random_range(0.05..0.95)),
            _ => Placement::Extension {
                beyond_b: rng.random_bool(0.5),
                t: rng.random_range(MIN_EXTENSION..=cfg.max_extension),
            },
        }
    }

    fn locate(self, a: V2, b: V2) -> V2 {
        match self {
            Placement::Midpoint => lerp(a, b, 0.5),
            Placement::Trisection(k) => lerp(a, b, k as f64 / 3.0),
            Placement::Uniform(t) => lerp(a, b, t),
            Placement::Extension { beyond_b: true, t } => lerp(a, b, 1.0 + t),
            Placement::Extension { beyond_b: false, t } => lerp(a, b, -t),
        }
    }
}

/// True when the segment `p q` lies along an existing stroke and shares a
/// stretch of it.
fn overlaps_stroke(strokes: &[(Point, Point)], p: V2, q: V2) -> bool {
    strokes.iter().any(|&(s, t)| {
        let (s, t) = (v(s), v(t));
        if dist_to_line(p, s, t) > COLLINEAR_TOL || dist_to_line(q, s, t) > COLLINEAR_TOL {
            return false;
        }
        let d = sub(t, s);
        let l2 = dot(d, d);
        let (u0, u1) = (dot(sub(p, s), d) / l2, dot(sub(q, s), d) / l2);
        u0.max(u1) > 1e-6 && u0.min(u1) < 1.0 - 1e-6
    })
}

impl Draft {
    /// Adds one point on or beyond polygon side `side`. Returns false when
    /// no placement works within the retry budget.
    fn add_point<R: Rng + ?Sized>(&mut self, cfg: &GenConfig, rng: &mut R) -> bool {
        let n = self.polygon.len();
        for _ in 0..PLACE_ATTEMPTS {
            let side = rng.random_range(0..n);
            let (ia, ib) = (side, (side + 1) % n);
            let (a, b) = (v(self.polygon[ia]), v(self.polygon[ib]));
            let placement = Placement::sample(cfg, rng);
            let through = match placement {
                Placement::Extension { beyond_b, .. } => Some(if beyond_b { ib } else { ia }),
                _ => None,
            };
            if through.is_some_and(|i| self.extended_through[i]) {
                continue;
            }
            let raw = placement.locate(a, b);
            if raw.0.abs() > 10.0 || raw.1.abs() > 10.0 {
                continue;
            }
            let Ok(p) = quantize(raw.0, raw.1) else { continue };
            if self.points.iter().any(|q| q.dist(&p) < MIN_SPACING) {
                continue;
            }
            let pv = v(p);

            // Extending first so connections are checked against the longer stroke.
            let mut strokes = self.strokes.clone();
            if let Some(vertex) = through {
                let stroke = &mut strokes[self.sides[side]];
                if stroke.0 == self.polygon[vertex] {
                    stroke.0 = p;
                } else if stroke.1 == self.polygon[vertex] {
                    stroke.1 = p;
                } else {
                    continue;
                }
                let idx = self.sides[side];
                let (s, t) = strokes[idx];
                let rest: Vec<_> = strokes.iter().enumerate().filter(|&(j, _)| j != idx).map(|(_, s)| *s).collect();
                if overlaps_stroke(&rest, v(s), v(t)) {
                    continue;
                }
            }

            let candidates: Vec<Point> = self
                .polygon
                .iter()
                .copied()
                .filter(|&c| dist_to_line(v(c), a, b) > COLLINEAR_TOL)
                .filter(|&c| !overlaps_stroke(&strokes, pv, v(c)))
                .collect();
            if candidates.is_empty() {
                continue;
            }
            let want = rng.random_range(1..=2).min(candidates.len());
            let mut added = 0;
            for i in sample(rng, candidates.len(), want) {
                let c = candidates[i];
                if !overlaps_stroke(&strokes, pv, v(c)) {
                    strokes.push((p, c));
                    added += 1;
                }
            }
            if added == 0 {
                continue;
            }
            if let Some(vertex) = through {
                self.extended_through[vertex] = true;
            }
            self.strokes = strokes;
            self.points.push(p);
            return true;
        }
        false
    }
}

/// Deletes one vertex with probability `delete_prob`; otherwise adds
/// `k` points, `k` drawn from `add_count_range`. Points that cannot be
/// placed are skipped.
pub fn mutate_points<R: Rng + ?Sized>(draft: &mut Draft, cfg: &GenConfig, rng: &mut R) {
    if rng.random_bool(cfg.delete_prob) {
        let idx = rng.random_range(0..draft.polygon.len());
        draft.delete_vertex(idx);
        return;
    }
    let [lo, hi] = cfg.add_count_range;
    let k = rng.random_range(lo..=hi);
    for _ in 0..k {
        draft.add_point(cfg, rng);
    }
}
