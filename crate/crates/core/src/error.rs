use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("index {index} out of range for rank {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index set {0} is not connected")]
    NotConnected(String),
    #[error("index set {0} is not special")]
    NotSpecial(String),
    #[error("indices must be distinct (got {0} twice)")]
    EqualIndices(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("elements belong to different realizations")]
    RealizationMismatch,
    #[error("point is not in the Tits cone or membership is undecided within budget")]
    NotInConeOrUnknown,
    #[error("partial maps are defined over different samples")]
    SampleMismatch,
    #[error("weight sample exceeds cap of {0} points")]
    SampleOverflow(usize),
    #[error("unsupported output format: {0}")]
    UnsupportedFormat(String),
    #[error("rank {0} exceeds the supported maximum of 64")]
    TooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
