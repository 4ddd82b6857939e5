//! Closed-form blowup families for the focusing quadratic wave equation,
//! their Lorentz boosts, and the explicit eigenfields of the linearized flow,
//! together with machinery that verifies all of them exactly.
//!
//! Every closed form here is a rational function of the two scalars
//! s = |xi|^2 and g = gamma(xi, a) (plus, for the translation modes, one
//! directional derivative p = d_{a_j} gamma). Working in that chart turns the
//! PDE and eigenvalue residuals into polynomial identities, which are checked
//! coefficient-by-coefficient over the rationals whenever the boost is given
//! by rational hyperbolic parameters.

pub mod boost;
pub mod chart;
pub mod constants;
pub mod eigen;
pub mod error;
pub mod family;

pub use boost::BoostKernel;
pub use chart::{ChartConsts, ChartScalar, PowFrac};
pub use constants::{profile_constants, ExactProfileConstants, ProfileConstants};
pub use eigen::{eigen_residual, EigenField, EigenResidualReport, ModeLabel};
pub use error::ProfileError;
pub use family::{
    eval_profile, pde_residual, positivity_on_ball, BlowupFamily, FamilyKind, PdeResidual,
    PositivityReport, PositivityVerdict,
};
