use std::fmt::Write;

use super::{centered_dash_offset, label_anchors, label_size, LineStyle, RenderConfig};
use crate::geometry::Figure;

/// SVG 1.1 document: a path per segment, a circle per circle, a text per label.
pub fn render_vector(fig: &Figure, rc: &RenderConfig) -> String {
    let frame = rc.frame();
    let (w, h) = (rc.width, rc.height);
    let stroke = rc.stroke();
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    let paint = format!(
        r#"fill="none" stroke="rgb({c},{c},{c})" stroke-width="{lw}""#,
        c = stroke.color,
        lw = fmt(stroke.width)
    );

    for seg in fig.segments() {
        let (x0, y0) = frame.to_pixel(seg.a());
        let (x1, y1) = frame.to_pixel(seg.b());
        let dash = match stroke.pattern {
            LineStyle::Solid => String::new(),
            LineStyle::Dashed { on, off } => {
                let len = (x1 - x0).hypot(y1 - y0);
                format!(
                    r#" stroke-dasharray="{} {}" stroke-dashoffset="{}""#,
                    fmt(on),
                    fmt(off),
                    fmt(centered_dash_offset(on, off, len))
                )
            }
        };
        let _ = writeln!(
            s,
            r#"<path d="M {} {} L {} {}" {paint}{dash}/>"#,
            fmt(x0),
            fmt(y0),
            fmt(x1),
            fmt(y1)
        );
    }

    // A normalized circle is an axis-aligned ellipse on the non-square canvas.
    let (kx, ky) = frame.scale();
    for c in fig.circles() {
        let (cx, cy) = frame.to_pixel(c.center());
        let dash = match stroke.pattern {
            LineStyle::Solid => String::new(),
            LineStyle::Dashed { on, off } => format!(r#" stroke-dasharray="{} {}""#, fmt(on), fmt(off)),
        };
        let _ = writeln!(
            s,
            r#"<circle cx="0" cy="0" r="{}" transform="translate({} {}) scale({} {})" vector-effect="non-scaling-stroke" {paint}{dash}/>"#,
            fmt(c.radius()),
            fmt(cx),
            fmt(cy),
            fmt(kx),
            fmt(ky)
        );
    }

    let size = label_size(rc);
    for (ch, (x, y)) in label_anchors(fig, rc) {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="{}" text-anchor="middle" dominant-baseline="central" fill="black">{ch}</text>"#,
            fmt(x),
            fmt(y),
            fmt(size)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}
