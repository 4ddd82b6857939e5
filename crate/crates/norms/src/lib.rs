//! Adapted energy inner products on the unit ball and exact verification of
//! the dissipativity inequality for the free similarity-flow generator on
//! polynomial test data.
//!
//! Everything here is rational arithmetic: integrals of polynomials over the
//! ball and sphere reduce to exact monomial moments (in units of the sphere
//! area), so inequalities are decided without floats.

mod error;
mod field;
mod inner;
mod moments;

pub use error::NormError;
pub use field::{free_generator_apply, random_field, PolyField};
pub use inner::{
    dissipativity_corpus, dissipativity_gap, hk_inner, hk_norm_sq, norm_equivalence_probe,
    standard_norm_sq, CorpusReport, GapReport,
};
pub use moments::{monomial_moment, Domain, MomentTable};
