//! Connection-problem spectrum location for the radial mode families of the
//! blowup linearizations.
//!
//! The mode equation at angular degree l,
//!
//!   (1 - rho^2) f'' + ((d-1)/rho - 2(lambda+3) rho) f'
//!     - [ (lambda+2)(lambda+3) + l(l+d-2)/rho^2 - V(rho) ] f = 0,
//!
//! has an eigenvalue at lambda exactly when a solution is smooth on the
//! closed ball, i.e. when the branch analytic at rho = 0 continues
//! analytically through the light cone rho = 1. This crate decides that by
//! two-sided Frobenius shooting: expand the index-0 branches at both
//! endpoints in x = rho^2, meet at x = 1/2, and measure their Wronskian.
//! Light-cone resonances (the second index (d-5)/2 - lambda hitting a small
//! nonnegative integer) are cleared polynomially, so the indicator is a
//! single holomorphic function on the whole scan window whose zero set is
//! the point spectrum; rectangle scans locate the zeros by cell winding plus
//! Newton refinement and certify the count with the argument principle.
//!
//! For the constant-potential (ODE blowup) family the same equation is
//! hypergeometric and the spectrum is read off exactly from a Gamma-function
//! condition; both routes are exposed and cross-checked.

mod error;
mod indicator;
mod kappa;
mod ode;
mod scan;
mod series;
mod types;

pub use error::{ModeScanError, SeriesSide};
pub use indicator::{
    connection_indicator, indicator_sample, indicator_sample_auto, two_sided_series,
    IndicatorSample, MATCH_POINT, WINDOW_RE_MIN,
};
pub use kappa::{connection_coefficient_kappa, kappa_spectrum, KappaConnection};
pub use scan::{
    eigenvalue_scan, scan_potential, unstable_search_window, GridSpec, LocatedRoot, Region,
    ScanResult,
};
pub use series::{TwoSidedSeries, MAX_ORDER, TAIL_TOL};
pub use types::{PotentialTag, SpectralPoint};
