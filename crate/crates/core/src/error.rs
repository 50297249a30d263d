use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("letter {letter} out of range for n = {n}")]
    LetterOutOfRange { letter: u32, n: usize },
    #[error("not unitary")]
    NotUnitary,
    #[error("not essential: multiplicity {0}")]
    NotEssential(usize),
    #[error("representation has no blocks")]
    NoBlocks,
    #[error("cycle word must be nonempty")]
    EmptyCycle,
    #[error("invalid basis name: {0}")]
    InvalidName(String),
    #[error("rank {0} lies outside the representation space")]
    RankOutOfRange(u64),
    #[error("basis rank overflow")]
    RankOverflow,
    #[error("phase for rank {0} is not unimodular")]
    NotUnimodular(u64),
    #[error("twists differ between summands")]
    IncompatibleTwists,
    #[error("Hilbert space dimensions differ: {0} vs {1}")]
    DimensionMismatch(String, String),
    #[error("invalid basis map: {0}")]
    InvalidBasisMap(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not orthonormal")]
    NotOrthonormal,
    #[error("not generating")]
    NotGenerating,
    #[error("inconsistent K0 data: {0}")]
    InconsistentK0(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("parse error at {field}: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { field: field.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
