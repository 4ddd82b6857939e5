use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ProfileError {
    #[error("dimension {0} is below 7, where the profile constants degenerate")]
    DimensionTooSmall(u32),
    #[error("denominator vanished during profile evaluation ({denominator})")]
    PoleEncountered { denominator: f64 },
    #[error("point lies outside the backward light cone of the blowup point")]
    OutsideLightCone,
    #[error("unknown eigenfield mode label `{0}`")]
    UnknownMode(String),
    #[error("boost vector has length {got}, expected {expected}")]
    BoostLengthMismatch { expected: usize, got: usize },
    #[error("point has dimension {got}, expected {expected}")]
    PointLengthMismatch { expected: usize, got: usize },
}
