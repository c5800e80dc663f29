use crate::geometry::Segment;

/// Projections shorter than this (in normalized units) are points.
pub const DEGENERATE_EPS: f64 = 1e-6;

/// Closed 1-D interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Self {
        Self {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.len() <= 0.0
    }

    pub fn widen(&self, w: f64) -> Self {
        Self {
            lo: self.lo - w,
            hi: self.hi + w,
        }
    }

    pub fn intersection_len(&self, other: &Interval) -> f64 {
        (self.hi.min(other.hi) - self.lo.max(other.lo)).max(0.0)
    }

    /// `|A ∩ B| / |A ∪ B|`. Two point-like intervals score 1 when they sit
    /// within `eps` of each other and 0 otherwise.
    pub fn iou(&self, other: &Interval, eps: f64) -> f64 {
        if self.len() <= eps && other.len() <= eps {
            return if (self.lo - other.lo).abs() <= eps && (self.hi - other.hi).abs() <= eps {
                1.0
            } else {
                0.0
            };
        }
        let inter = self.intersection_len(other);
        let union = self.len() + other.len() - inter;
        inter / union
    }
}

/// Line IoU: the mean of the x- and y-projection interval IoUs.
pub fn line_iou(p: &Segment, t: &Segment) -> f64 {
    line_iou_padded(p, t, 0.0)
}

/// Line IoU with every projection widened by `pad` on both sides first.
pub fn line_iou_padded(p: &Segment, t: &Segment, pad: f64) -> f64 {
    // Work in hundredths so quantized coordinates are exact integers.
    let pad = pad * 100.0;
    let eps = DEGENERATE_EPS * 100.0;
    let proj = |s: &Segment| {
        (
            Interval::new(f64::from(s.a().hx()), f64::from(s.b().hx())).widen(pad),
            Interval::new(f64::from(s.a().hy()), f64::from(s.b().hy())).widen(pad),
        )
    };
    let (px, py) = proj(p);
    let (tx, ty) = proj(t);
    0.5 * (px.iou(&tx, eps) + py.iou(&ty, eps))
}
