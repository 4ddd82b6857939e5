use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormError {
    #[error("moments require dimension >= 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("damping constant is only established in dimensions 7 and 9, got {0}")]
    DimensionUnsupported(u32),
    #[error("the adapted inner product starts at order 3, got k = {0}")]
    OrderTooSmall(u32),
    #[error("field arity {got} does not match dimension {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("norm ratio of the zero field is undefined")]
    ZeroField,
}
