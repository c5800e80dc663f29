//! Slow-perception sequence codec.
//!
//! A figure is first reduced to independent line and circle units, then each
//! line is traced as a flow chain whose steps are bounded by the perceptual
//! ruler. Circles are never subdivided. Collapsing a sequence keeps only the
//! chain endpoints, so gaze points never affect the recovered geometry.

mod flow;
mod text;

pub use flow::{jitter_gaze, subdivide, FlowChain, PerceptualRuler};
pub use text::{parse, serialize, Diagnostic, ParseMode, Parsed, CIRCLES_HEADER, LABELS_HEADER, LINES_HEADER};

use rand::Rng;

use crate::error::CodecError;
use crate::geometry::{canonicalize, Circle, Figure, Labels, Segment};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlowSequence {
    pub chains: Vec<FlowChain>,
    pub circles: Vec<Circle>,
    pub labels: Labels,
    pub ruler: PerceptualRuler,
}

impl SlowSequence {
    /// Total number of points emitted across all chains and circles.
    pub fn point_count(&self) -> usize {
        self.chains.iter().map(|c| c.points.len()).sum::<usize>() + self.circles.len()
    }
}

/// Line and circle units of a figure, in canonical order.
pub fn decompose(fig: &Figure) -> (Vec<Segment>, Vec<Circle>) {
    (fig.segments().to_vec(), fig.circles().to_vec())
}

/// Decomposes a figure and subdivides every line with the ruler.
pub fn encode(fig: &Figure, ruler: PerceptualRuler) -> SlowSequence {
    let (lines, circles) = decompose(fig);
    SlowSequence {
        chains: lines.iter().map(|s| subdivide(s, ruler)).collect(),
        circles,
        labels: fig.labels().clone(),
        ruler,
    }
}

/// Jitters the gaze points of every chain in a sequence.
pub fn jitter_sequence<R: Rng + ?Sized>(
    sq: &SlowSequence,
    rng: &mut R,
    max_frac: f64,
) -> Result<SlowSequence, CodecError> {
    let chains = sq
        .chains
        .iter()
        .map(|c| jitter_gaze(c, rng, max_frac))
        .collect::<Result<_, _>>()?;
    Ok(SlowSequence {
        chains,
        ..sq.clone()
    })
}

/// Reduces every chain to the segment joining its endpoints.
///
/// Chains whose endpoints coincide and labels that do not sit on a resulting
/// endpoint are dropped and reported.
pub fn collapse(sq: &SlowSequence) -> (Figure, Vec<Diagnostic>) {
    let mut diagnostics = Vec::new();
    let mut segments = Vec::with_capacity(sq.chains.len());
    for (i, chain) in sq.chains.iter().enumerate() {
        let ends = chain.start().zip(chain.end());
        match ends.map(|(a, b)| canonicalize(a, b)) {
            Some(Ok(s)) => segments.push(s),
            _ => diagnostics.push(Diagnostic {
                statement: i,
                line: None,
                reason: "chain endpoints coincide".into(),
            }),
        }
    }
    let mut labels = Labels::new();
    for (&letter, p) in &sq.labels {
        if segments.iter().any(|s| s.a() == *p || s.b() == *p) {
            labels.insert(letter, *p);
        } else {
            diagnostics.push(Diagnostic {
                statement: sq.chains.len() + sq.circles.len(),
                line: None,
                reason: format!("label {letter} is not on a segment endpoint"),
            });
        }
    }
    let fig = Figure::new(segments, sq.circles.clone(), labels)
        .expect("segments canonical and labels bound");
    (fig, diagnostics)
}
