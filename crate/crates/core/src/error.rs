use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TqcError {
    #[error("spin {twice_s}/2 is outside the valid range: {reason}")]
    InvalidSpin { twice_s: u32, reason: &'static str },

    #[error("invalid state parameters: {0}")]
    InvalidState(String),

    #[error("block {index} is not square ({rows}x{cols})")]
    NonSquareBlock { index: usize, rows: usize, cols: usize },

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },

    #[error("states do not share a single spin")]
    MixedSpins,

    #[error("empty state list")]
    EmptyFrame,

    #[error("state {index} lies within {residual:.3e} of the span of its predecessors")]
    RankDeficient { index: usize, residual: f64 },

    #[error("plane is not symmetric under the requested rotation (residual {residual:.3e})")]
    NotSymmetric { residual: f64 },

    #[error("plane is not anticoherent (residual {residual:.3e})")]
    NotAnticoherent { residual: f64 },

    #[error("curve does not close in the Grassmannian (residual {residual:.3e})")]
    OpenCurve { residual: f64 },

    #[error("at least {min} integration steps are required, got {got}")]
    TooFewSteps { min: usize, got: usize },

    #[error("reparametrization is not a monotone map of [0,1] onto itself: {0}")]
    NonMonotone(String),

    #[error("rotation vector leaves the |v| <= 2pi chart at t = {t} (|v| = {norm})")]
    ChartGuard { t: f64, norm: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("invalid qubit permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, TqcError>;
