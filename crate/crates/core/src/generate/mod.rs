//! Synthetic figure engine.
//!
//! A sample is grown in four steps: a base quadrilateral, vertex deletion or
//! point addition, an optional inscribed or circumscribed circle, and
//! optional vertex labels. Every sample draws from its own RNG seeded from
//! `(seed, index, attempt)`, so samples are independent of generation order.

mod circles;
mod config;
mod mutate;
mod shape;
mod substrate;

pub use circles::{circumscribed_circle, inscribed_circle, max_inscribed, min_enclosing};
pub use config::{GenConfig, PlacementWeights, QuadKind};
pub use mutate::{mutate_points, Placement};
pub use substrate::{sample_substrate, QuadShape, SUBSTRATE_ATTEMPTS};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GenError;
use crate::geometry::{canonicalize, Circle, Figure, Labels, Point};
use crate::render::{LineStyle, RenderConfig};

/// Per-sample retry cap.
pub const SAMPLE_ATTEMPTS: usize = 100;

/// A figure under construction. Keeps the base polygon and the side-to-stroke
/// mapping that the later steps need.
#[derive(Clone, Debug, PartialEq)]
pub struct Draft {
    pub kind: QuadKind,
    /// Base polygon in traversal order.
    pub polygon: Vec<Point>,
    /// All vertices in the order they were created.
    pub points: Vec<Point>,
    strokes: Vec<(Point, Point)>,
    /// `sides[i]` is the stroke containing polygon edge `i -> i + 1`.
    sides: Vec<usize>,
    /// Polygon vertices that an extended side already runs through.
    extended_through: Vec<bool>,
    pub circles: Vec<Circle>,
    pub labels: Labels,
}

impl Draft {
    pub fn from_polygon(kind: QuadKind, vertices: &[Point]) -> Self {
        let n = vertices.len();
        Self {
            kind,
            polygon: vertices.to_vec(),
            points: vertices.to_vec(),
            strokes: (0..n).map(|i| (vertices[i], vertices[(i + 1) % n])).collect(),
            sides: (0..n).collect(),
            extended_through: vec![false; n],
            circles: Vec::new(),
            labels: Labels::new(),
        }
    }

    pub fn strokes(&self) -> &[(Point, Point)] {
        &self.strokes
    }

    /// Removes a polygon vertex and joins its two neighbours.
    pub fn delete_vertex(&mut self, idx: usize) {
        let mut poly = self.polygon.clone();
        poly.remove(idx);
        *self = Draft::from_polygon(self.kind, &poly);
    }

    /// Points that end at least one stroke, in creation order.
    pub fn endpoints(&self) -> Vec<Point> {
        self.points
            .iter()
            .copied()
            .filter(|p| self.strokes.iter().any(|(a, b)| a == p || b == p))
            .collect()
    }

    pub fn into_figure(self) -> Result<Figure, GenError> {
        let segments = self
            .strokes
            .iter()
            .map(|&(a, b)| canonicalize(a, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Figure::new(segments, self.circles, self.labels)?)
    }
}

/// With probability `circle_prob`, adds the inscribed or the circumscribed
/// circle of the base polygon (even odds). Circles that leave the frame are
/// skipped.
pub fn add_circles<R: Rng + ?Sized>(draft: &mut Draft, cfg: &GenConfig, rng: &mut R) {
    if !rng.random_bool(cfg.circle_prob) {
        return;
    }
    let circle = if rng.random_bool(0.5) {
        inscribed_circle(&draft.polygon, draft.kind)
    } else {
        circumscribed_circle(&draft.polygon)
    };
    draft.circles.extend(circle);
}

/// With probability `label_prob`, letters the vertices in creation order.
/// Only the first 26 vertices get a letter.
pub fn add_labels<R: Rng + ?Sized>(draft: &mut Draft, cfg: &GenConfig, rng: &mut R) {
    if !rng.random_bool(cfg.label_prob) {
        return;
    }
    draft.labels = cfg
        .label_alphabet
        .chars()
        .zip(draft.endpoints())
        .collect();
}

/// Runs the four generation steps once.
pub fn build_figure<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Result<Figure, GenError> {
    let mut draft = sample_substrate(cfg, rng)?;
    mutate_points(&mut draft, cfg, rng);
    add_circles(&mut draft, cfg, rng);
    add_labels(&mut draft, cfg, rng);
    draft.into_figure()
}

/// One generated figure and the style it should be rendered with.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub index: u64,
    pub figure: Figure,
    pub render: RenderConfig,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one `(index, stream)` pair of a run.
pub fn sub_seed(seed: u64, index: u64, stream: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index ^ splitmix64(stream)))
}

const RENDER_STREAM: u64 = u64::MAX;

/// Exactly `fixed_dpi_fraction` of every block of samples use the fixed dpi.
fn uses_fixed_dpi(cfg: &GenConfig, index: u64) -> bool {
    let f = cfg.fixed_dpi_fraction;
    // Index i is fixed when the running count floor((i + 1) f) steps up.
    ((index + 1) as f64 * f).floor() > (index as f64 * f).floor()
}

/// Render style for a sample; independent of how many attempts the figure took.
pub fn sample_render_config(cfg: &GenConfig, index: u64) -> RenderConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, index, RENDER_STREAM));
    let dpi = if uses_fixed_dpi(cfg, index) {
        cfg.fixed_dpi
    } else {
        rng.random_range(cfg.dpi_range[0]..=cfg.dpi_range[1])
    };
    let [w0, w1] = cfg.line_width_range;
    let line_width = if w0 < w1 { rng.random_range(w0..=w1) } else { w0 };
    let line_width = (line_width * 100.0).round() / 100.0;
    let style = if rng.random_bool(cfg.dashed_prob) {
        LineStyle::dashed_for(line_width)
    } else {
        LineStyle::Solid
    };
    RenderConfig::new(dpi, line_width, style).expect("dpi validated by config")
}

/// Generates sample `index`, redrawing with a fresh sub-seed on failure.
pub fn generate_sample(cfg: &GenConfig, index: u64) -> Result<Sample, GenError> {
    for attempt in 0..SAMPLE_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(cfg.seed, index, attempt as u64));
        if let Ok(figure) = build_figure(cfg, &mut rng) {
            return Ok(Sample {
                index,
                figure,
                render: sample_render_config(cfg, index),
            });
        }
    }
    Err(GenError::SampleFailed {
        index,
        attempts: SAMPLE_ATTEMPTS,
    })
}

/// The deterministic stream of samples `0..count`.
pub fn generate(
    cfg: &GenConfig,
    count: u64,
) -> Result<impl Iterator<Item = Result<Sample, GenError>> + '_, GenError> {
    cfg.validate()?;
    Ok((0..count).map(move |i| generate_sample(cfg, i)))
}
