//! Slow-perception geometry pipeline: synthetic figure generation, the
//! perceptual-ruler sequence codec, rendering and line-IoU evaluation.

pub mod codec;
pub mod error;
pub mod eval;
pub mod generate;
pub mod geometry;
pub mod render;
pub mod transform;

pub use error::{CodecError, EvalError, GenError, GeomError, RenderError, TransformError};
pub use geometry::{canonicalize, quantize, Circle, Figure, Labels, Point, Segment};
