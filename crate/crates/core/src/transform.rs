//! Mapping between image pixels and the normalized `[-10, 10]` label frame.
//!
//! `x' = (px / width) * 20 - 10`, and likewise for `y`. The normalized frame
//! is y-up; raster images are y-down and get flipped on the way in.

use serde::{Deserialize, Serialize};

use crate::error::TransformError;
use crate::geometry::{quantize, Point};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YAxis {
    Up,
    /// Raster convention: row 0 at the top.
    #[default]
    Down,
}

/// The full image canvas an annotation or rendering refers to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PixelFrame {
    pub width: f64,
    pub height: f64,
    #[serde(default)]
    pub y_axis: YAxis,
}

impl PixelFrame {
    pub fn new(width: f64, height: f64, y_axis: YAxis) -> Result<Self, TransformError> {
        if !(width > 0.0 && height > 0.0 && width.is_finite() && height.is_finite()) {
            return Err(TransformError::EmptyFrame);
        }
        Ok(Self {
            width,
            height,
            y_axis,
        })
    }

    /// Pixel point to quantized normalized point.
    pub fn to_normalized(&self, px: f64, py: f64) -> Result<Point, TransformError> {
        if !(0.0..=self.width).contains(&px) || !(0.0..=self.height).contains(&py) {
            return Err(TransformError::OutOfFrame(px, py));
        }
        let py = match self.y_axis {
            YAxis::Up => py,
            YAxis::Down => self.height - py,
        };
        let x = px / self.width * 20.0 - 10.0;
        let y = py / self.height * 20.0 - 10.0;
        Ok(quantize(x, y)?)
    }

    /// Normalized point to (unrounded) pixel coordinates.
    pub fn to_pixel(&self, p: Point) -> (f64, f64) {
        self.to_pixel_f(p.x(), p.y())
    }

    pub(crate) fn to_pixel_f(self, x: f64, y: f64) -> (f64, f64) {
        let px = (x + 10.0) / 20.0 * self.width;
        let py = (y + 10.0) / 20.0 * self.height;
        match self.y_axis {
            YAxis::Up => (px, py),
            YAxis::Down => (px, self.height - py),
        }
    }

    /// Pixels per normalized unit along x and y.
    pub fn scale(&self) -> (f64, f64) {
        (self.width / 20.0, self.height / 20.0)
    }
}
