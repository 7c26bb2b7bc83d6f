use thiserror::Error;

/// Errors produced by the fusion frame toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("all spanning vectors are numerically zero")]
    ZeroSpan,

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("matrix is not Hermitian (||H - H*|| = {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("family is not a frame (lower bound {alpha:.3e})")]
    NotAFrame { alpha: f64 },

    #[error("family is not a fusion frame (lower bound {alpha:.3e})")]
    NotAFusionFrame { alpha: f64 },

    #[error("shape mismatch in {what}: expected {expected}, found {found}")]
    ShapeMismatch {
        what: &'static str,
        expected: String,
        found: String,
    },

    #[error("block layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("weights must be positive: {0}")]
    WeightError(String),

    #[error("block {index} is mapped to the zero subspace")]
    DegenerateBlock { index: usize },

    #[error("index mismatch: {0}")]
    IndexMismatch(String),

    #[error("bad window: {0}")]
    BadWindow(String),

    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),

    #[error("matrix is not a left inverse of the analysis operator (residual {residual:.3e})")]
    NotLeftInverse { residual: f64 },

    #[error("local frame vector {vector} of block {block} lies outside its subspace (distance {distance:.3e})")]
    NotInSubspace {
        block: usize,
        vector: usize,
        distance: f64,
    },

    #[error("local frame of block {block} does not span its subspace")]
    LocalFrameNotSpanning { block: usize },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
