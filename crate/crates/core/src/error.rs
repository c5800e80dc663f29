use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("coordinate is not finite")]
    NonFinite,
    #[error("coordinate outside [-10, 10]")]
    OutOfRange,
    #[error("circle radius must be positive")]
    InvalidRadius,
    #[error("circle does not fit inside [-10, 10]²")]
    CircleOutOfRange,
    #[error("label {0:?} is not a letter A-Z")]
    InvalidLabel(char),
    #[error("label {0:?} is not bound to a segment endpoint")]
    UnboundLabel(char),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("frame dimensions must be positive")]
    EmptyFrame,
    #[error("pixel ({0}, {1}) lies outside the frame")]
    OutOfFrame(f64, f64),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid generator config: {0}")]
    Config(String),
    #[error("no substrate fit the coordinate range after {0} attempts")]
    SubstrateRejected(usize),
    #[error("sample {index} failed after {attempts} attempts")]
    SampleFailed { index: u64, attempts: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("line {line}, column {column}: {reason}")]
    Parse {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("invalid perceptual ruler: {0}")]
    Ruler(String),
    #[error("jitter fraction {0} outside [0, 0.1]")]
    Jitter(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("IoU threshold {0} outside (0, 1]")]
    Threshold(f64),
    #[error("IoU padding {0} must be finite and non-negative")]
    Padding(f64),
}

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("invalid render config: {0}")]
    Config(String),
    #[error("image encoding failed: {0}")]
    Encode(#[from] image::ImageError),
}
