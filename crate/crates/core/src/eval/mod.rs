//! Line-segment scoring: line IoU, one-to-one matching, and micro-averaged
//! precision / recall / F1 split into short and long segments.

mod iou;
mod matching;

pub use iou::{line_iou, line_iou_padded, Interval, DEGENERATE_EPS};
pub use matching::{match_iou_matrix, match_lines, MatchPair, MatchResult};

use std::fmt::Write as _;
use std::ops::{Add, AddAssign};

use serde::Serialize;

use crate::error::EvalError;
use crate::geometry::{Figure, Segment};

/// Default IoU thresholds: basic and strict.
pub const DEFAULT_THRESHOLDS: [f64; 2] = [0.75, 0.9];

/// Segments shorter than this (normalized units) are "short".
pub const SHORT_LONG_SPLIT: f64 = 8.0;

/// True when a segment is in the short bucket. Exact on quantized lengths.
pub fn is_short(seg: &Segment) -> bool {
    let split = (SHORT_LONG_SPLIT * 100.0) as i64;
    seg.length2_hundredths() < split * split
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl Counts {
    pub fn precision(&self) -> f64 {
        ratio(self.tp, self.tp + self.fp)
    }

    pub fn recall(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }

    pub fn f1(&self) -> f64 {
        let (p, r) = (self.precision(), self.recall());
        if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        }
    }

    /// Number of segments on either side.
    pub fn support(&self) -> u64 {
        self.tp + self.fp + self.fn_
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            tp: self.tp + o.tp,
            fp: self.fp + o.fp,
            fn_: self.fn_ + o.fn_,
        }
    }
}

impl AddAssign for Counts {
    fn add_assign(&mut self, o: Counts) {
        *self = *self + o;
    }
}

/// Counts for all segments and for the short / long buckets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BucketCounts {
    pub all: Counts,
    pub short: Counts,
    pub long: Counts,
}

impl Add for BucketCounts {
    type Output = BucketCounts;

    fn add(self, o: BucketCounts) -> BucketCounts {
        BucketCounts {
            all: self.all + o.all,
            short: self.short + o.short,
            long: self.long + o.long,
        }
    }
}

impl AddAssign for BucketCounts {
    fn add_assign(&mut self, o: BucketCounts) {
        *self = *self + o;
    }
}

impl BucketCounts {
    fn bucket(&mut self, seg: &Segment) -> &mut Counts {
        if is_short(seg) {
            &mut self.short
        } else {
            &mut self.long
        }
    }

    /// Buckets one image's match: a pair by its GT length, leftovers by
    /// their own length.
    pub fn from_match(m: &MatchResult, preds: &[Segment], gts: &[Segment]) -> Self {
        let mut c = BucketCounts::default();
        for p in &m.pairs {
            c.bucket(&gts[p.gt]).tp += 1;
        }
        for &i in &m.unmatched_pred {
            c.bucket(&preds[i]).fp += 1;
        }
        for &j in &m.unmatched_gt {
            c.bucket(&gts[j]).fn_ += 1;
        }
        c.all = c.short + c.long;
        c
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Scores {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl From<Counts> for Scores {
    fn from(c: Counts) -> Self {
        Scores {
            tp: c.tp,
            fp: c.fp,
            fn_: c.fn_,
            precision: c.precision(),
            recall: c.recall(),
            f1: c.f1(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdScores {
    pub threshold: f64,
    pub all: Scores,
    pub short: Scores,
    pub long: Scores,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImageScores {
    pub index: usize,
    /// One entry per threshold, in report order.
    pub counts: Vec<BucketCounts>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub corpus_size: usize,
    pub iou_pad: f64,
    pub thresholds: Vec<ThresholdScores>,
    pub images: Vec<ImageScores>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalOptions {
    pub thresholds: Vec<f64>,
    /// Widening applied to every projection interval before IoU.
    pub pad: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            thresholds: DEFAULT_THRESHOLDS.to_vec(),
            pad: 0.0,
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<(), EvalError> {
        if let Some(&t) = self.thresholds.iter().find(|t| !(**t > 0.0 && **t <= 1.0)) {
            return Err(EvalError::Threshold(t));
        }
        if !(self.pad.is_finite() && self.pad >= 0.0) {
            return Err(EvalError::Padding(self.pad));
        }
        Ok(())
    }
}

/// Per-image counts at each threshold. Circles are ignored.
pub fn score_image(pred: &Figure, gt: &Figure, opts: &EvalOptions) -> Vec<BucketCounts> {
    let (ps, gs) = (pred.segments(), gt.segments());
    let iou: Vec<Vec<f64>> = ps
        .iter()
        .map(|p| gs.iter().map(|t| line_iou_padded(p, t, opts.pad)).collect())
        .collect();
    opts.thresholds
        .iter()
        .map(|&thr| BucketCounts::from_match(&match_iou_matrix(&iou, gs.len(), thr), ps, gs))
        .collect()
}

/// Micro-averaged scores over `(prediction, ground truth)` pairs.
pub fn score(corpus: &[(Figure, Figure)], opts: &EvalOptions) -> Result<EvalReport, EvalError> {
    opts.validate()?;
    if corpus.is_empty() {
        return Err(EvalError::EmptyCorpus);
    }
    let images: Vec<ImageScores> = corpus
        .iter()
        .enumerate()
        .map(|(index, (pred, gt))| ImageScores {
            index,
            counts: score_image(pred, gt, opts),
        })
        .collect();
    Ok(summarize(images, opts))
}

/// Aggregates per-image counts into a report.
pub fn summarize(images: Vec<ImageScores>, opts: &EvalOptions) -> EvalReport {
    let thresholds = opts
        .thresholds
        .iter()
        .enumerate()
        .map(|(k, &threshold)| {
            let total = images
                .iter()
                .fold(BucketCounts::default(), |acc, img| acc + img.counts[k]);
            ThresholdScores {
                threshold,
                all: total.all.into(),
                short: total.short.into(),
                long: total.long.into(),
            }
        })
        .collect();
    EvalReport {
        corpus_size: images.len(),
        iou_pad: opts.pad,
        thresholds,
        images,
    }
}

impl EvalReport {
    /// Plain-text table, percentages with one decimal.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let cols = ["F1", "F1_s", "F1_l", "P", "P_s", "P_l", "R", "R_s", "R_l"];
        let _ = write!(out, "{:<8}", "IoU");
        for c in cols {
            let _ = write!(out, "{c:>7}");
        }
        out.push('\n');
        for t in &self.thresholds {
            let _ = write!(out, "{:<8}", t.threshold);
            let vals = [
                t.all.f1,
                t.short.f1,
                t.long.f1,
                t.all.precision,
                t.short.precision,
                t.long.precision,
                t.all.recall,
                t.short.recall,
                t.long.recall,
            ];
            for v in vals {
                let _ = write!(out, "{:>7.1}", v * 100.0);
            }
            out.push('\n');
        }
        out
    }
}
