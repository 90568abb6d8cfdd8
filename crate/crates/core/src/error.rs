use thiserror::Error;

/// Errors produced by the geometry, linear algebra and simulation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field order {0} outside the supported range 4..=32")]
    OutOfSupportedRange(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires odd field order")]
    EvenCharacteristic,
    #[error("operation requires even field order")]
    OddCharacteristic,
    #[error("parameters do not define a smooth conic of this family")]
    InvalidConicParameters,
    #[error("point does not lie on the conic")]
    PointNotOnConic,
    #[error("point lies on the conic")]
    PointOnConic,
    #[error("line direction is not admissible for this family")]
    ForbiddenLineDirection,
    #[error("parallel class is not admissible for this family")]
    ForbiddenClass,
    #[error("parallel class equals the base class")]
    ClassEqualsBase,
    #[error("no admissible pair of distinct parallel classes exists")]
    DegenerateClassPair,
    #[error("code dimension {dim} exceeds the exhaustive-search limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },
    #[error("code has dimension zero")]
    EmptyCode,
    #[error("conjectured dimension formulas require odd q")]
    OddQRequired,
    #[error("no conjectured dimension formula for this family")]
    UnsupportedFamily,
    #[error("matrix entry out of bounds: row {row}, column {col} (n_cols {n_cols})")]
    EntryOutOfBounds { row: usize, col: usize, n_cols: usize },
    #[error("invalid regular code parameters: {0}")]
    InvalidDivisibility(String),
    #[error("LLR vector length {got} does not match code length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("code rate {0} must lie strictly between 0 and 1")]
    InvalidRate(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
