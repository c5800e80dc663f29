//! One-to-one assignment of predicted to ground-truth segments.
//!
//! Among all matchings that only use pairs with IoU at or above the
//! threshold, the largest one is chosen, and among those the one with the
//! highest total IoU. Both objectives are folded into a single weight
//! (`BONUS + iou` per admissible pair, with `BONUS` larger than any possible
//! IoU total) and solved with the Hungarian method.

use serde::Serialize;

use super::iou::line_iou_padded;
use crate::geometry::Segment;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MatchPair {
    pub pred: usize,
    pub gt: usize,
    pub iou: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MatchResult {
    pub pairs: Vec<MatchPair>,
    pub unmatched_pred: Vec<usize>,
    pub unmatched_gt: Vec<usize>,
}

impl MatchResult {
    pub fn total_iou(&self) -> f64 {
        self.pairs.iter().map(|p| p.iou).sum()
    }
}

/// Matches segments by line IoU.
pub fn match_lines(preds: &[Segment], gts: &[Segment], threshold: f64, pad: f64) -> MatchResult {
    let iou: Vec<Vec<f64>> = preds
        .iter()
        .map(|p| gts.iter().map(|t| line_iou_padded(p, t, pad)).collect())
        .collect();
    match_iou_matrix(&iou, gts.len(), threshold)
}

/// Matches from a precomputed `preds × gts` IoU matrix.
pub fn match_iou_matrix(iou: &[Vec<f64>], n_gt: usize, threshold: f64) -> MatchResult {
    let n_pred = iou.len();
    let n = n_pred.max(n_gt);
    let mut result = MatchResult::default();
    if n_pred > 0 && n_gt > 0 {
        let bonus = (n + 1) as f64;
        let mut cost = vec![vec![0.0; n]; n];
        for (i, row) in iou.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= threshold {
                    cost[i][j] = -(bonus + v);
                }
            }
        }
        let assignment = hungarian(&cost);
        for (i, &j) in assignment.iter().enumerate() {
            if i < n_pred && j < n_gt && iou[i][j] >= threshold {
                result.pairs.push(MatchPair {
                    pred: i,
                    gt: j,
                    iou: iou[i][j],
                });
            }
        }
    }
    let mut pred_used = vec![false; n_pred];
    let mut gt_used = vec![false; n_gt];
    for p in &result.pairs {
        pred_used[p.pred] = true;
        gt_used[p.gt] = true;
    }
    result.unmatched_pred = (0..n_pred).filter(|&i| !pred_used[i]).collect();
    result.unmatched_gt = (0..n_gt).filter(|&j| !gt_used[j]).collect();
    result
}

/// Minimum-cost perfect assignment on a square matrix; returns the column
/// assigned to each row. Rows and columns are scanned in index order, so the
/// result is deterministic.
fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let inf = f64::INFINITY;
    // 1-based potentials; column 0 is a sentinel.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut col_of = vec![0usize; n];
    for j in 1..=n {
        col_of[row_of[j] - 1] = j - 1;
    }
    col_of
}
