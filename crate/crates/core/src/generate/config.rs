use serde::{Deserialize, Serialize};

use crate::error::GenError;

/// Base quadrilateral kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadKind {
    Square,
    Rectangle,
    Parallelogram,
    Rhombus,
    Trapezoid,
    IsoscelesTrapezoid,
    RightTrapezoid,
    Arbitrary,
}

impl QuadKind {
    pub const ALL: [QuadKind; 8] = [
        QuadKind::Square,
        QuadKind::Rectangle,
        QuadKind::Parallelogram,
        QuadKind::Rhombus,
        QuadKind::Trapezoid,
        QuadKind::IsoscelesTrapezoid,
        QuadKind::RightTrapezoid,
        QuadKind::Arbitrary,
    ];

    /// Kinds whose incircle touches all four sides.
    pub fn is_tangential(&self) -> bool {
        matches!(self, QuadKind::Square | QuadKind::Rhombus)
    }
}

/// Base weights for where an added point lands on its host side. The
/// midpoint and trisection weights are multiplied by `special_weight`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementWeights {
    pub midpoint: f64,
    /// Shared by both trisection points.
    pub trisection: f64,
    pub uniform: f64,
    pub extension: f64,
}

impl Default for PlacementWeights {
    fn default() -> Self {
        Self {
            midpoint: 0.3,
            trisection: 0.3,
            uniform: 0.3,
            extension: 0.1,
        }
    }
}

/// Synthetic data engine parameters. Every field has a default, so a config
/// file only needs the keys it changes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenConfig {
    pub quad_types: Vec<QuadKind>,
    /// Probability of deleting one vertex instead of adding points.
    pub delete_prob: f64,
    /// Inclusive range for the number of added points.
    pub add_count_range: [u32; 2],
    pub special_weight: f64,
    pub placement: PlacementWeights,
    /// Extension points land beyond a side's endpoint by up to this fraction
    /// of the side length.
    pub max_extension: f64,
    pub circle_prob: f64,
    pub label_prob: f64,
    pub label_alphabet: String,
    /// Range for the substrate's characteristic side length.
    pub side_range: [f64; 2],
    pub seed: u64,
    /// Fraction of samples rendered at `fixed_dpi`; the rest draw dpi uniformly.
    pub fixed_dpi_fraction: f64,
    pub fixed_dpi: u32,
    pub dpi_range: [u32; 2],
    pub line_width_range: [f64; 2],
    pub dashed_prob: f64,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            quad_types: QuadKind::ALL.to_vec(),
            delete_prob: 0.2,
            add_count_range: [1, 6],
            special_weight: 2.0,
            placement: PlacementWeights::default(),
            max_extension: 0.5,
            circle_prob: 0.3,
            label_prob: 0.5,
            label_alphabet: ('A'..='Z').collect(),
            side_range: [3.0, 9.0],
            seed: 0,
            fixed_dpi_fraction: 0.25,
            fixed_dpi: 96,
            dpi_range: [36, 300],
            line_width_range: [1.0, 4.0],
            dashed_prob: 0.2,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |m: &str| Err(GenError::Config(m.to_string()));
        let prob = |p: f64| (0.0..=1.0).contains(&p);
        if self.quad_types.is_empty() {
            return bad("quad_types is empty");
        }
        for (name, p) in [
            ("delete_prob", self.delete_prob),
            ("circle_prob", self.circle_prob),
            ("label_prob", self.label_prob),
            ("fixed_dpi_fraction", self.fixed_dpi_fraction),
            ("dashed_prob", self.dashed_prob),
        ] {
            if !prob(p) {
                return Err(GenError::Config(format!("{name} = {p} is not in [0, 1]")));
            }
        }
        let [lo, hi] = self.add_count_range;
        if lo > hi || hi > 6 {
            return bad("add_count_range must be a sub-range of [0, 6]");
        }
        if !(self.special_weight >= 0.0 && self.special_weight.is_finite()) {
            return bad("special_weight must be non-negative");
        }
        let w = self.placement;
        let ws = [w.midpoint, w.trisection, w.uniform, w.extension];
        if ws.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return bad("placement weights must be non-negative");
        }
        if w.midpoint * self.special_weight + w.trisection * self.special_weight + w.uniform + w.extension <= 0.0 {
            return bad("placement weights sum to zero");
        }
        if !(0.0..=1.0).contains(&self.max_extension) {
            return bad("max_extension must be in [0, 1]");
        }
        if self.label_alphabet.is_empty() || !self.label_alphabet.chars().all(|c| c.is_ascii_uppercase()) {
            return bad("label_alphabet must be letters A-Z");
        }
        let [s0, s1] = self.side_range;
        if !(s0 > 0.0 && s0 <= s1 && s1 <= 14.0) {
            return bad("side_range must satisfy 0 < lo <= hi <= 14");
        }
        let [d0, d1] = self.dpi_range;
        if !(36 <= d0 && d0 <= d1 && d1 <= 300) || !(36..=300).contains(&self.fixed_dpi) {
            return bad("dpi values must lie in [36, 300]");
        }
        let [l0, l1] = self.line_width_range;
        if !(l0 > 0.0 && l0 <= l1 && l1.is_finite()) {
            return bad("line_width_range must be positive and ordered");
        }
        Ok(())
    }
}
