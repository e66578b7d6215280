use thiserror::Error;

use crate::cube::MAX_DIM;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cube dimension must be between 1 and {MAX_DIM}, got {got}")]
    DimensionOutOfRange { got: u32 },

    #[error("point index {index} out of range for n = {n} (must be < 2^{n})")]
    PointOutOfRange { index: u64, n: u32 },

    #[error("character mask {mask:#b} out of range for n = {n}")]
    MaskOutOfRange { mask: u64, n: u32 },

    #[error("mixed cube dimensions: n = {left} vs n = {right}")]
    MixedDimensions { left: u32, right: u32 },

    #[error("malformed family descriptor: {0}")]
    MalformedFamily(String),

    #[error("cannot sample {requested} distinct points from a cube of {available}")]
    SampleTooLarge { requested: u64, available: u64 },

    #[error("bitmap for n = {n} needs exactly {expected} hex digits, got {got}")]
    BadHexLength { n: u32, expected: usize, got: usize },

    #[error("invalid hex digit {0:?} in bitmap")]
    BadHexDigit(char),

    #[error("bitmap has bits set beyond index 2^{n} - 1")]
    StrayBits { n: u32 },

    #[error("operation is undefined for the empty set")]
    EmptySet,

    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("bias {0} outside [-1, 1]")]
    BiasOutOfRange(f64),

    #[error("Taylor truncation order must be even and at least 2, got {0}")]
    TaylorOrder(u32),

    #[error("input masks are not linearly independent")]
    NotIndependent,

    #[error("the given masks do not form a basis of F_2^{n}")]
    NotABasis { n: u32 },

    #[error("no weight-{k} basis of F_2^{n} exists: weight-{k} vectors span only the even-weight subspace")]
    EvenWeightBasis { k: u32, n: u32 },

    #[error("no weight-{n} basis of F_2^{n} exists for n > 1: the all-ones mask is the only weight-{n} vector")]
    AllOnesOnly { n: u32 },

    #[error("character weight k = {k} out of range for n = {n}")]
    WeightOutOfRange { k: u32, n: u32 },

    #[error("spectrum threshold rho must be positive")]
    RhoNotPositive,

    #[error("exhaustive search is limited to n <= 4, got n = {n}")]
    SearchTooLarge { n: u32 },

    #[error("target size {m} infeasible for local search on n = {n} (need 1 <= m <= 2^{n} - 1)")]
    InfeasibleSize { m: u64, n: u32 },
}
