//! Series-side analysis of the radial spectral ODEs: Frobenius recurrences
//! in two coordinate charts, quasi-solution comparisons for the coefficient
//! ratios, exact half-plane certificates for the ratio contraction lemmas,
//! and floating-point ratio scans.
//!
//! The exact layer works over rationals (and Gaussian rationals on the
//! imaginary axis) so every certified inequality is a finite, checkable
//! computation; the float layer mirrors it for speed and exploration.

pub mod certify;
pub mod error;
pub mod ledger;
pub mod quasi;
pub mod ratfunc;
pub mod recurrence;
pub mod scan;

pub use certify::{
    certify_lemma, envelope_values, epsilon_c_at, epsilon_c_on_axis, EllClass, LemmaCertificate,
    PerEllVerdict, SubCheck,
};
pub use error::SeriesError;
pub use ledger::{
    frobenius_coeffs, frobenius_coeffs_f64, frobenius_coeffs_f64_in_form,
    frobenius_coeffs_in_form, frobenius_coeffs_symbolic, frobenius_coeffs_symbolic_in_form,
    removed_factor, CoefficientLedger, LedgerEntries, LedgerMode, ScalarEntries, SymbolicEntries,
    EXACT_TERM_CAP, SYMBOLIC_TERM_CAP,
};
pub use quasi::{delta_epsilon_c, quasi_solution, quasi_solution_f64};
pub use ratfunc::RatLam;
pub use recurrence::{
    asymptotic_coeffs, characteristic_polynomial, characteristic_roots, heun_params,
    recurrence_coeffs, recurrence_coeffs_at, recurrence_coeffs_f64, recurrence_coeffs_gaussian,
    FrobeniusForm, HeunParams,
};
pub use scan::{
    numeric_ratio_scan, numeric_ratio_scan_in_form, RatioClass, ScanReport, MIN_SCAN_TERMS,
};
