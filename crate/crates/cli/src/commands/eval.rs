use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use slowperc_core::codec::{collapse, parse, ParseMode, PerceptualRuler};
use slowperc_core::eval::{score_image, summarize, BucketCounts, EvalOptions, ImageScores, ThresholdScores};
use slowperc_core::transform::{PixelFrame, YAxis};
use slowperc_core::{canonicalize, Circle, Figure, Labels};

use crate::dataset::read_jsonl;
use crate::error::{create_dir_all, write, CliError, Result};
use crate::EvalArgs;

pub const REPORT_JSON: &str = "report.json";
pub const REPORT_TXT: &str = "report.txt";

/// One figure to score. Extra keys (as in dataset records) are ignored.
#[derive(Clone, Debug, Deserialize)]
pub struct EvalRecord {
    pub id: String,
    /// Sequence text.
    #[serde(default)]
    pub sequence: Option<String>,
    /// Ruler the sequence was written with; metadata only.
    #[serde(default)]
    pub ruler: Option<PerceptualRuler>,
    /// Pixel-space annotation, used when there is no sequence.
    #[serde(default)]
    pub annotation: Option<Annotation>,
}

/// Manual annotation in image pixels.
#[derive(Clone, Debug, Deserialize)]
pub struct Annotation {
    pub width: f64,
    pub height: f64,
    #[serde(default)]
    pub y_axis: YAxis,
    /// `[x1, y1, x2, y2]` per line.
    #[serde(default)]
    pub lines: Vec<[f64; 4]>,
    /// `[cx, cy, r]`; the radius is measured along x.
    #[serde(default)]
    pub circles: Vec<[f64; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdDiagnostic {
    pub id: String,
    pub statement: usize,
    pub line: Option<usize>,
    pub reason: String,
}

#[derive(Serialize)]
struct ImageOut<'a> {
    id: &'a str,
    counts: &'a [BucketCounts],
}

#[derive(Serialize)]
struct ReportOut<'a> {
    corpus_size: usize,
    iou_pad: f64,
    thresholds: &'a [ThresholdScores],
    dropped_statements: usize,
    diagnostics: &'a [IdDiagnostic],
    images: Vec<ImageOut<'a>>,
}

fn annotation_figure(a: &Annotation, diags: &mut Vec<String>) -> Result<Figure> {
    let frame = PixelFrame::new(a.width, a.height, a.y_axis).map_err(CliError::data)?;
    let mut segments = Vec::new();
    for (i, l) in a.lines.iter().enumerate() {
        let p = frame.to_normalized(l[0], l[1]).map_err(CliError::data)?;
        let q = frame.to_normalized(l[2], l[3]).map_err(CliError::data)?;
        match canonicalize(p, q) {
            Ok(s) => segments.push(s),
            Err(e) => diags.push(format!("line {i}: {e}")),
        }
    }
    let mut circles = Vec::new();
    for c in &a.circles {
        let center = frame.to_normalized(c[0], c[1]).map_err(CliError::data)?;
        let r = c[2] / frame.scale().0;
        circles.push(Circle::new(center, r).map_err(CliError::data)?);
    }
    Figure::new(segments, circles, Labels::new()).map_err(CliError::data)
}

/// Builds the figure for one record, collecting dropped statements.
pub fn record_figure(rec: &EvalRecord, mode: ParseMode, diags: &mut Vec<IdDiagnostic>) -> Result<Figure> {
    let ctx = |e: &dyn std::fmt::Display| CliError::data(format!("record {}: {e}", rec.id));
    if let Some(text) = &rec.sequence {
        let parsed = parse(text, rec.ruler.unwrap_or(PerceptualRuler::Infinite), mode).map_err(|e| ctx(&e))?;
        let (fig, more) = collapse(&parsed.sequence);
        for d in parsed.diagnostics.into_iter().chain(more) {
            if mode == ParseMode::Strict {
                return Err(ctx(&d.reason));
            }
            diags.push(IdDiagnostic {
                id: rec.id.clone(),
                statement: d.statement,
                line: d.line,
                reason: d.reason,
            });
        }
        return Ok(fig);
    }
    if let Some(a) = &rec.annotation {
        let mut notes = Vec::new();
        let fig = annotation_figure(a, &mut notes).map_err(|e| ctx(&e))?;
        if mode == ParseMode::Strict {
            if let Some(n) = notes.first() {
                return Err(ctx(n));
            }
        }
        diags.extend(notes.into_iter().enumerate().map(|(i, reason)| IdDiagnostic {
            id: rec.id.clone(),
            statement: i,
            line: None,
            reason,
        }));
        return Ok(fig);
    }
    Err(ctx(&"neither sequence nor annotation"))
}

fn index_by_id(records: Vec<EvalRecord>, what: &str) -> Result<HashMap<String, EvalRecord>> {
    let mut map = HashMap::with_capacity(records.len());
    for r in records {
        if let Some(dup) = map.insert(r.id.clone(), r) {
            return Err(CliError::data(format!("duplicate id {} in {what}", dup.id)));
        }
    }
    Ok(map)
}

pub fn run(args: &EvalArgs) -> Result<()> {
    let opts = EvalOptions {
        thresholds: args.iou.clone(),
        pad: args.iou_pad,
    };
    opts.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let pool = super::pool(args.workers)?;

    let gt: Vec<EvalRecord> = read_jsonl(&args.gt)?;
    let pred = index_by_id(read_jsonl(&args.pred)?, "predictions")?;
    if gt.is_empty() {
        return Err(CliError::data("ground truth is empty"));
    }
    let gt_ids: BTreeSet<&str> = gt.iter().map(|r| r.id.as_str()).collect();
    if gt_ids.len() != gt.len() {
        return Err(CliError::data("duplicate ids in ground truth"));
    }
    let missing: Vec<&str> = gt_ids.iter().copied().filter(|id| !pred.contains_key(*id)).collect();
    let mut extra: Vec<&str> = pred.keys().map(String::as_str).filter(|id| !gt_ids.contains(id)).collect();
    extra.sort_unstable();
    if !missing.is_empty() || !extra.is_empty() {
        return Err(CliError::data(format!(
            "id mismatch; missing predictions: [{}]; unknown predictions: [{}]",
            missing.join(", "),
            extra.join(", ")
        )));
    }

    let mode = args.mode.mode();
    let built: Vec<Result<(Figure, Figure, Vec<IdDiagnostic>)>> = pool.install(|| {
        gt.par_iter()
            .map(|g| {
                let mut diags = Vec::new();
                let gt_fig = record_figure(g, ParseMode::Strict, &mut diags)?;
                let pred_fig = record_figure(&pred[&g.id], mode, &mut diags)?;
                Ok((pred_fig, gt_fig, diags))
            })
            .collect()
    });
    let mut corpus = Vec::with_capacity(built.len());
    let mut diagnostics = Vec::new();
    for b in built {
        let (p, g, d) = b?;
        corpus.push((p, g));
        diagnostics.extend(d);
    }

    let images: Vec<ImageScores> = pool.install(|| {
        corpus
            .par_iter()
            .enumerate()
            .map(|(index, (p, g))| ImageScores {
                index,
                counts: score_image(p, g, &opts),
            })
            .collect()
    });
    let report = summarize(images, &opts);

    let out = ReportOut {
        corpus_size: report.corpus_size,
        iou_pad: report.iou_pad,
        thresholds: &report.thresholds,
        dropped_statements: diagnostics.len(),
        diagnostics: &diagnostics,
        images: report
            .images
            .iter()
            .map(|img| ImageOut {
                id: &gt[img.index].id,
                counts: &img.counts,
            })
            .collect(),
    };
    create_dir_all(&args.out)?;
    let json = serde_json::to_string_pretty(&out).map_err(CliError::data)?;
    write(&args.out.join(REPORT_JSON), json + "\n")?;
    let text = format!(
        "{}\nimages: {}\ndropped statements: {}\n",
        report.table(),
        report.corpus_size,
        diagnostics.len()
    );
    write(&args.out.join(REPORT_TXT), &text)?;
    print!("{text}");
    Ok(())
}
