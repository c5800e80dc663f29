use image::GrayImage;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

/// Photometric augmentation: `v' = (v - 128) * c + 128 + b + n`, with
/// `c` uniform in `1 ± contrast`, `b` uniform in `± brightness` and
/// `n ~ N(0, noise_std²)` per pixel, clamped to `[0, 255]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Perturbation {
    /// Largest brightness shift, in gray levels.
    pub brightness: f64,
    /// Largest relative contrast change.
    pub contrast: f64,
    /// Noise standard deviation, in gray levels.
    pub noise_std: f64,
}

impl Perturbation {
    pub const IDENTITY: Self = Self {
        brightness: 0.0,
        contrast: 0.0,
        noise_std: 0.0,
    };
}

impl Default for Perturbation {
    fn default() -> Self {
        Self {
            brightness: 20.0,
            contrast: 0.15,
            noise_std: 6.0,
        }
    }
}

pub fn perturb_image<R: Rng + ?Sized>(img: &GrayImage, p: &Perturbation, rng: &mut R) -> GrayImage {
    let b = if p.brightness > 0.0 {
        rng.random_range(-p.brightness..=p.brightness)
    } else {
        0.0
    };
    let c = if p.contrast > 0.0 {
        1.0 + rng.random_range(-p.contrast..=p.contrast)
    } else {
        1.0
    };
    let noise = (p.noise_std > 0.0).then(|| Normal::new(0.0, p.noise_std).expect("finite std"));
    let mut out = img.clone();
    for px in out.pixels_mut() {
        let mut v = (px.0[0] as f64 - 128.0) * c + 128.0 + b;
        if let Some(n) = &noise {
            v += n.sample(rng);
        }
        px.0[0] = v.round().clamp(0.0, 255.0) as u8;
    }
    out
}
