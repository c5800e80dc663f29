use image::GrayImage;

use super::font::{glyph, ink, GLYPH_H, GLYPH_W};
use super::{centered_dash_offset, label_anchors, label_size, LineStyle, RenderConfig, StrokeStyle};
use crate::geometry::Figure;

type P = (f64, f64);

/// Per-pixel ink coverage in `[0, 1]`; overlapping strokes take the max.
struct Coverage {
    w: u32,
    h: u32,
    buf: Vec<f32>,
}

impl Coverage {
    fn new(w: u32, h: u32) -> Self {
        Self {
            w,
            h,
            buf: vec![0.0; (w * h) as usize],
        }
    }

    fn put(&mut self, x: i64, y: i64, c: f64) {
        if x < 0 || y < 0 || x >= self.w as i64 || y >= self.h as i64 {
            return;
        }
        let cell = &mut self.buf[(y as u32 * self.w + x as u32) as usize];
        *cell = cell.max(c as f32);
    }

    /// Round-capped stroke from `a` to `b`, one pixel of linear falloff.
    fn capsule(&mut self, a: P, b: P, width: f64) {
        let r = width / 2.0;
        let pad = r + 1.0;
        let x0 = (a.0.min(b.0) - pad).floor().max(0.0) as i64;
        let x1 = (a.0.max(b.0) + pad).ceil().min(self.w as f64) as i64;
        let y0 = (a.1.min(b.1) - pad).floor().max(0.0) as i64;
        let y1 = (a.1.max(b.1) + pad).ceil().min(self.h as f64) as i64;
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        let l2 = dx * dx + dy * dy;
        for y in y0..y1 {
            for x in x0..x1 {
                let (px, py) = (x as f64 + 0.5, y as f64 + 0.5);
                let t = if l2 > 0.0 {
                    (((px - a.0) * dx + (py - a.1) * dy) / l2).clamp(0.0, 1.0)
                } else {
                    0.0
                };
                let d = (px - a.0 - t * dx).hypot(py - a.1 - t * dy);
                let c = (r + 0.5 - d).clamp(0.0, 1.0);
                if c > 0.0 {
                    self.put(x, y, c);
                }
            }
        }
    }

    /// Draws a polyline, splitting it into dashes by arc length when dashed.
    fn polyline(&mut self, pts: &[P], style: &StrokeStyle, dash_offset: f64) {
        let (on, off) = match style.pattern {
            LineStyle::Solid => {
                for w in pts.windows(2) {
                    self.capsule(w[0], w[1], style.width);
                }
                return;
            }
            LineStyle::Dashed { on, off } => (on, off),
        };
        let period = on + off;
        let mut s = 0.0;
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let len = (b.0 - a.0).hypot(b.1 - a.1);
            if len == 0.0 {
                continue;
            }
            let at = |u: f64| (a.0 + (b.0 - a.0) * u / len, a.1 + (b.1 - a.1) * u / len);
            // Dash k covers [k period - shift, k period - shift + on] in local arc length.
            let shift = s + dash_offset;
            let mut k = (shift / period).floor();
            loop {
                let start = k * period - shift;
                if start >= len {
                    break;
                }
                let (lo, hi) = (start.max(0.0), (start + on).min(len));
                if hi > lo {
                    self.capsule(at(lo), at(hi), style.width);
                }
                k += 1.0;
            }
            s += len;
        }
    }

    fn into_image(self, color: u8) -> GrayImage {
        let ink = 255.0 - color as f32;
        let px = self.buf.iter().map(|&c| (255.0 - c * ink).round() as u8).collect();
        GrayImage::from_raw(self.w, self.h, px).expect("buffer matches size")
    }
}

/// Anti-aliased grayscale rendering on a white page.
pub fn render_raster(fig: &Figure, rc: &RenderConfig) -> GrayImage {
    let frame = rc.frame();
    let style = rc.stroke();
    let mut cov = Coverage::new(rc.width, rc.height);

    for seg in fig.segments() {
        let a = frame.to_pixel(seg.a());
        let b = frame.to_pixel(seg.b());
        let offset = match style.pattern {
            LineStyle::Dashed { on, off } => centered_dash_offset(on, off, (b.0 - a.0).hypot(b.1 - a.1)),
            LineStyle::Solid => 0.0,
        };
        cov.polyline(&[a, b], &style, offset);
    }

    let (kx, ky) = frame.scale();
    for c in fig.circles() {
        let (cx, cy) = frame.to_pixel(c.center());
        let (rx, ry) = (c.radius() * kx, c.radius() * ky);
        let n = ((std::f64::consts::TAU * rx.max(ry) / 2.0).ceil() as usize).max(32);
        let pts: Vec<P> = (0..=n)
            .map(|i| {
                let t = std::f64::consts::TAU * i as f64 / n as f64;
                (cx + rx * t.cos(), cy - ry * t.sin())
            })
            .collect();
        cov.polyline(&pts, &style, 0.0);
    }

    let size = label_size(rc);
    let cell = (size / GLYPH_H as f64).floor().max(1.0) as i64;
    for (ch, (x, y)) in label_anchors(fig, rc) {
        let Some(rows) = glyph(ch) else { continue };
        let left = (x - (GLYPH_W as i64 * cell) as f64 / 2.0).round() as i64;
        let top = (y - (GLYPH_H as i64 * cell) as f64 / 2.0).round() as i64;
        for row in 0..GLYPH_H {
            for col in 0..GLYPH_W {
                if !ink(rows, col, row) {
                    continue;
                }
                for dy in 0..cell {
                    for dx in 0..cell {
                        cov.put(left + col as i64 * cell + dx, top + row as i64 * cell + dy, 1.0);
                    }
                }
            }
        }
    }

    cov.into_image(style.color)
}

/// Pixel value at a fractional pixel position, or white off-canvas.
pub fn probe(img: &GrayImage, x: f64, y: f64) -> u8 {
    let (xi, yi) = (x.floor() as i64, y.floor() as i64);
    if xi < 0 || yi < 0 || xi >= img.width() as i64 || yi >= img.height() as i64 {
        return 255;
    }
    img.get_pixel(xi as u32, yi as u32).0[0]
}

/// Darkest pixel within `radius` pixels of `(x, y)`.
pub fn probe_min(img: &GrayImage, x: f64, y: f64, radius: i64) -> u8 {
    let mut best = 255;
    for dy in -radius..=radius {
        for dx in -radius..=radius {
            best = best.min(probe(img, x + dx as f64, y + dy as f64));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Circle, Labels, Point, Segment};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    fn horizontal() -> Figure {
        Figure::new(vec![Segment::new(p(-5.0, 0.0), p(5.0, 0.0)).unwrap()], vec![], Labels::new()).unwrap()
    }

    #[test]
    fn blank_is_white() {
        let img = render_raster(&Figure::empty(), &RenderConfig::default());
        assert!(img.pixels().all(|px| px.0[0] == 255));
    }

    #[test]
    fn horizontal_segment_row() {
        let rc = RenderConfig::default();
        let img = render_raster(&horizontal(), &rc);
        let frame = rc.frame();
        for i in 0..=10 {
            let x = -5.0 + i as f64;
            let (px, py) = frame.to_pixel(p(x, 0.0));
            assert!(probe_min(&img, px, py, 1) < 128, "x = {x}");
        }
        // Well off the stroke stays white.
        let (px, py) = frame.to_pixel(p(0.0, 2.0));
        assert_eq!(probe(&img, px, py), 255);
        let (px, py) = frame.to_pixel(p(7.0, 0.0));
        assert_eq!(probe(&img, px, py), 255);
    }

    #[test]
    fn dashed_midpoint_is_inked() {
        for dpi in [36, 96, 300] {
            for width in [1.0, 2.5, 4.0] {
                let rc = RenderConfig::new(dpi, width, LineStyle::dashed_for(width)).unwrap();
                let img = render_raster(&horizontal(), &rc);
                let (px, py) = rc.frame().to_pixel(p(0.0, 0.0));
                assert!(probe(&img, px, py) < 200);
                let dark = (0..img.width()).filter(|&x| probe(&img, x as f64 + 0.5, py) < 200).count();
                let solid = render_raster(&horizontal(), &RenderConfig::new(dpi, width, LineStyle::Solid).unwrap());
                let full = (0..solid.width()).filter(|&x| probe(&solid, x as f64 + 0.5, py) < 200).count();
                assert!(dark < full, "dpi {dpi} width {width}: dashes leave no gaps");
            }
        }
    }

    #[test]
    fn circle_is_drawn_on_its_radius() {
        let rc = RenderConfig::default();
        let fig = Figure::new(vec![], vec![Circle::new(p(0.0, 0.0), 4.0).unwrap()], Labels::new()).unwrap();
        let img = render_raster(&fig, &rc);
        let frame = rc.frame();
        for k in 0..16 {
            let t = std::f64::consts::TAU * k as f64 / 16.0;
            let (px, py) = frame.to_pixel(Point::new(4.0 * t.cos(), 4.0 * t.sin()).unwrap());
            assert!(probe_min(&img, px, py, 1) < 128);
        }
        let (px, py) = frame.to_pixel(p(0.0, 0.0));
        assert_eq!(probe(&img, px, py), 255);
    }

    #[test]
    fn labels_leave_ink() {
        let rc = RenderConfig::default();
        let a = p(-5.0, 0.0);
        let labels: Labels = [('A', a)].into_iter().collect();
        let seg = Segment::new(a, p(5.0, 0.0)).unwrap();
        let with = render_raster(&Figure::new(vec![seg], vec![], labels).unwrap(), &rc);
        let without = render_raster(&horizontal(), &rc);
        let ink = |img: &GrayImage| img.pixels().filter(|px| px.0[0] < 128).count();
        assert!(ink(&with) > ink(&without) + 10);
    }

    #[test]
    fn deterministic() {
        let rc = RenderConfig::new(150, 3.0, LineStyle::dashed_for(3.0)).unwrap();
        assert_eq!(render_raster(&horizontal(), &rc), render_raster(&horizontal(), &rc));
    }
}
