//! SVG and grayscale raster output.
//!
//! The canvas is a fixed 6.4 x 4.8 inch page, so `dpi` alone sets the pixel
//! size. The whole canvas is the `[-10, 10]` label frame, y-down.

mod font;
mod perturb;
mod raster;
mod svg;

pub use perturb::{perturb_image, Perturbation};
pub use raster::{probe, probe_min, render_raster};
pub use svg::render_vector;

use image::codecs::png::PngEncoder;
use image::{GrayImage, ImageEncoder};
use serde::{Deserialize, Serialize};

use crate::error::RenderError;
use crate::geometry::{Figure, Point};
use crate::transform::{PixelFrame, YAxis};

pub const CANVAS_INCHES: (f64, f64) = (6.4, 4.8);
pub const DPI_RANGE: (u32, u32) = (36, 300);
/// Label offset from its vertex, as a fraction of canvas width.
const LABEL_OFFSET: f64 = 0.025;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LineStyle {
    Solid,
    /// Dash and gap lengths in pixels.
    Dashed { on: f64, off: f64 },
}

impl LineStyle {
    /// Dash pattern proportional to the stroke width.
    pub fn dashed_for(width: f64) -> Self {
        LineStyle::Dashed {
            on: (4.0 * width).max(6.0),
            off: (2.5 * width).max(4.0),
        }
    }
}

/// How strokes are drawn.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrokeStyle {
    pub width: f64,
    pub pattern: LineStyle,
    /// Gray level, 0 is black.
    pub color: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RenderConfig {
    pub dpi: u32,
    /// Stroke width in pixels.
    pub line_width: f64,
    pub line_style: LineStyle,
    pub width: u32,
    pub height: u32,
}

impl RenderConfig {
    pub fn new(dpi: u32, line_width: f64, line_style: LineStyle) -> Result<Self, RenderError> {
        if !(DPI_RANGE.0..=DPI_RANGE.1).contains(&dpi) {
            return Err(RenderError::Config(format!("dpi {dpi} outside [36, 300]")));
        }
        if !(line_width > 0.0 && line_width.is_finite()) {
            return Err(RenderError::Config(format!("line width {line_width} must be positive")));
        }
        if let LineStyle::Dashed { on, off } = line_style {
            if !(on > 0.0 && off > 0.0 && on.is_finite() && off.is_finite()) {
                return Err(RenderError::Config("dash lengths must be positive".into()));
            }
        }
        Ok(Self {
            dpi,
            line_width,
            line_style,
            width: (CANVAS_INCHES.0 * dpi as f64).round() as u32,
            height: (CANVAS_INCHES.1 * dpi as f64).round() as u32,
        })
    }

    pub fn frame(&self) -> PixelFrame {
        PixelFrame::new(self.width as f64, self.height as f64, YAxis::Down).expect("canvas is non-empty")
    }

    pub fn stroke(&self) -> StrokeStyle {
        StrokeStyle {
            width: self.line_width,
            pattern: self.line_style,
            color: 0,
        }
    }
}

impl Default for RenderConfig {
    fn default() -> Self {
        Self::new(96, 2.0, LineStyle::Solid).expect("valid defaults")
    }
}

/// Pixel anchor of each label: pushed away from the vertex centroid.
pub(crate) fn label_anchors(fig: &Figure, rc: &RenderConfig) -> Vec<(char, (f64, f64))> {
    let frame = rc.frame();
    let verts = fig.vertices();
    let n = verts.len().max(1) as f64;
    let (sx, sy) = verts.iter().fold((0.0, 0.0), |(x, y), p| (x + p.x(), y + p.y()));
    let (cx, cy) = frame.to_pixel(Point::new(sx / n, sy / n).unwrap_or(Point::ORIGIN));
    let off = LABEL_OFFSET * rc.width as f64;
    fig.labels()
        .iter()
        .map(|(&c, &p)| {
            let (px, py) = frame.to_pixel(p);
            let (dx, dy) = (px - cx, py - cy);
            let len = dx.hypot(dy);
            let (ux, uy) = if len > 1e-9 { (dx / len, dy / len) } else { (0.0, -1.0) };
            (c, (px + ux * off, py + uy * off))
        })
        .collect()
}

/// Label glyph height in pixels.
pub(crate) fn label_size(rc: &RenderConfig) -> f64 {
    (rc.height as f64 * 0.035).max(7.0)
}

/// Offset that puts the middle of a dash at arc length `len / 2`.
pub(crate) fn centered_dash_offset(on: f64, off: f64, len: f64) -> f64 {
    (on / 2.0 - len / 2.0).rem_euclid(on + off)
}

/// Encodes an 8-bit grayscale PNG.
pub fn encode_png(img: &GrayImage) -> Result<Vec<u8>, RenderError> {
    let mut out = Vec::new();
    PngEncoder::new(&mut out).write_image(img.as_raw(), img.width(), img.height(), image::ExtendedColorType::L8)?;
    Ok(out)
}
