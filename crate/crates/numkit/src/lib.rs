//! Shared floating-point numerics: Gauss-Legendre quadrature, Chebyshev
//! collocation on arbitrary intervals, a Lanczos gamma function, least-squares
//! and exponential-rate fits, scalar root finding, sequence acceleration, and
//! a small Nelder-Mead simplex search.

pub mod aitken;
pub mod cheb;
pub mod fit;
pub mod gamma;
pub mod nelder;
pub mod quad;
pub mod roots;

pub use aitken::aitken_accelerate;
pub use cheb::ChebGrid;
pub use fit::{linear_fit, log_linear_fit, lstsq, ExpFit};
pub use gamma::{gamma, gamma_complex, ln_gamma_complex, reciprocal_gamma};
pub use nelder::nelder_mead_2d;
pub use quad::{adaptive_quad, GaussLegendre};
pub use roots::{bisect, secant};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumError {
    #[error("root not bracketed on [{a}, {b}]")]
    NotBracketed { a: f64, b: f64 },

    #[error("iteration failed to converge within {0} steps")]
    NoConvergence(usize),

    #[error("quadrature failed to reach tolerance {tol} (estimate {estimate})")]
    QuadTolerance { tol: f64, estimate: f64 },

    #[error("fit needs at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },

    #[error("singular linear system in least-squares solve")]
    SingularSystem,

    #[error("fit window contains nonpositive values")]
    NonpositiveValues,
}
