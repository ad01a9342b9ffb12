use thiserror::Error;

/// Errors raised by the algebraic and numerical layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coordinate index {index} out of range for {nvars} variable(s)")]
    CoordinateOutOfRange { index: usize, nvars: usize },

    #[error("point has dimension {got}, expected {expected}")]
    PointDimension { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("malformed dimensions: {0}")]
    Dimension(String),

    #[error("frame index {index} out of range for rank {rank}")]
    FrameIndex { index: usize, rank: usize },

    #[error("forms live on different algebroids (rank {left_rank}/{left_vars} vs {right_rank}/{right_vars})")]
    AlgebroidMismatch {
        left_rank: usize,
        left_vars: usize,
        right_rank: usize,
        right_vars: usize,
    },

    #[error("connection is not flat: {0}")]
    NotFlat(String),

    #[error("invalid algebroid: {0}")]
    InvalidAlgebroid(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("scalar coefficients are not constant: {0}")]
    NonConstant(String),

    #[error("not invertible in this scalar backend: {0}")]
    NotInvertible(String),

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("density is not invariant (modular cocycle {0} is nonzero)")]
    NonInvariantDensity(String),

    #[error("density vanishes: {0}")]
    VanishingDensity(String),

    #[error("quadrature did not converge: estimate {estimate} with error {error} after {boxes} boxes")]
    Quadrature { estimate: f64, error: f64, boxes: usize },

    #[error("unoriented bundle: a Thom class needs an orientation")]
    Unoriented,

    #[error("form is not compactly supported along the fibres: {0}")]
    NotCompactVertical(String),

    #[error("division by the Euler class is not resolved for symbol `{symbol}`: needs {needed}")]
    UnresolvedEulerDivision { symbol: String, needed: String },

    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),

    #[error("invalid groupoid representation: {0}")]
    InvalidRepresentation(String),

    #[error("density weights are not orbit-constant: {0}")]
    NonInvariantWeights(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
