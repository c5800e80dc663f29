use std::fmt::Write;

use serde::{Deserialize, Serialize};
use slowperc_core::codec::{collapse, parse, ParseMode};

use crate::dataset::{read_jsonl, DatasetRecord};
use crate::error::{create_dir_all, write, CliError, Result};
use crate::StatsArgs;

pub const STATS_JSON: &str = "stats.json";
pub const LENGTH_SVG: &str = "length_hist.svg";
pub const ANGLE_SVG: &str = "angle_hist.svg";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bins: Vec<Bin>,
}

impl Histogram {
    /// `n` bins of width `w` from 0; values past the end go in the last bin.
    pub fn build(values: &[f64], w: f64, n: usize) -> Self {
        let mut bins: Vec<Bin> = (0..n)
            .map(|k| Bin {
                lo: k as f64 * w,
                hi: (k + 1) as f64 * w,
                count: 0,
            })
            .collect();
        for &v in values {
            let k = ((v / w).floor().max(0.0) as usize).min(n - 1);
            bins[k].count += 1;
        }
        Self { bins }
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().map(|b| b.count).sum()
    }

    pub fn to_svg(&self, title: &str) -> String {
        let (w, h, pad) = (640.0, 360.0, 40.0);
        let max = self.bins.iter().map(|b| b.count).max().unwrap_or(0).max(1) as f64;
        let bw = (w - 2.0 * pad) / self.bins.len() as f64;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
        );
        let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{title}</text>"#,
            w / 2.0
        );
        for (k, b) in self.bins.iter().enumerate() {
            let bh = (h - 2.0 * pad) * b.count as f64 / max;
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="steelblue"><title>[{}, {}): {}</title></rect>"#,
                pad + k as f64 * bw,
                h - pad - bh,
                bw * 0.9,
                bh,
                b.lo,
                b.hi,
                b.count
            );
        }
        let _ = writeln!(
            s,
            r#"<line x1="{pad}" y1="{y}" x2="{x2}" y2="{y}" stroke="black"/>"#,
            y = h - pad,
            x2 = w - pad
        );
        for k in (0..=self.bins.len()).step_by((self.bins.len() / 6).max(1)) {
            let lo = self.bins.get(k).map_or_else(|| self.bins[k - 1].hi, |b| b.lo);
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{}" font-family="sans-serif" font-size="11" text-anchor="middle">{lo}</text>"#,
                pad + k as f64 * bw,
                h - pad + 16.0
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub records: usize,
    pub segments: usize,
    pub median_length: f64,
    /// Share of segments with length in `[2, 10]`.
    pub share_2_to_10: f64,
    pub length: Histogram,
    pub angle: Histogram,
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    }
}

pub fn compute(records: &[DatasetRecord]) -> Result<Stats> {
    let mut lengths = Vec::new();
    let mut angles = Vec::new();
    for r in records {
        let parsed = parse(&r.sequence, r.ruler, ParseMode::Strict)
            .map_err(|e| CliError::data(format!("record {}: {e}", r.id)))?;
        let (fig, _) = collapse(&parsed.sequence);
        for s in fig.segments() {
            lengths.push(s.length());
            angles.push(s.angle_deg());
        }
    }
    if lengths.is_empty() {
        return Err(CliError::data("dataset has no segments"));
    }
    lengths.sort_by(f64::total_cmp);
    let inside = lengths.iter().filter(|l| (2.0..=10.0).contains(*l)).count();
    Ok(Stats {
        records: records.len(),
        segments: lengths.len(),
        median_length: median(&lengths),
        share_2_to_10: inside as f64 / lengths.len() as f64,
        length: Histogram::build(&lengths, 1.0, 30),
        angle: Histogram::build(&angles, 10.0, 18),
    })
}

pub fn run(args: &StatsArgs) -> Result<()> {
    let records: Vec<DatasetRecord> = read_jsonl(&args.dataset)?;
    if records.is_empty() {
        return Err(CliError::data("dataset is empty"));
    }
    let stats = compute(&records)?;
    create_dir_all(&args.out)?;
    let json = serde_json::to_string_pretty(&stats).map_err(CliError::data)?;
    write(&args.out.join(STATS_JSON), json + "\n")?;
    write(&args.out.join(LENGTH_SVG), stats.length.to_svg("Segment length"))?;
    write(&args.out.join(ANGLE_SVG), stats.angle.to_svg("Segment angle (degrees)"))?;
    println!(
        "{} segments in {} records; median length {:.2}; {:.1}% in [2, 10]",
        stats.segments,
        stats.records,
        stats.median_length,
        stats.share_2_to_10 * 100.0
    );
    Ok(())
}
