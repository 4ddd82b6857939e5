use thiserror::Error;

/// Errors from the exact-arithmetic layer. All operations are total on valid
/// inputs; these only signal contract violations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("the zero polynomial is not a valid input here")]
    ZeroPolynomial,

    #[error("expected a univariate polynomial, found {active} active variables")]
    NotUnivariate { active: usize },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for arity {arity}")]
    VariableOutOfRange { index: usize, arity: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,
}
