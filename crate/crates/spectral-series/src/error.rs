use exact_core::ExactError;
use thiserror::Error;

use crate::ledger::CoefficientLedger;

#[derive(Debug, Error)]
pub enum SeriesError {
    /// The three-term recurrence starts from the pair (a_{-1}, a_0), so
    /// coefficient indices below -1 are meaningless.
    #[error("recurrence index {0} is below -1")]
    IndexBelowStart(i64),

    #[error("quasi-solution index {0} is negative")]
    NegativeQuasiIndex(i64),

    #[error("a coefficient ledger needs at least 3 terms, got {0}")]
    LedgerTooShort(usize),

    /// Symbolic coefficients gain two polynomial degrees per index, so the
    /// ledger is capped; the terms built so far are attached.
    #[error("symbolic ledger capped at {limit} terms")]
    SymbolicBudget { limit: usize, partial: Box<CoefficientLedger> },

    /// Exact rational iteration is capped to keep coefficient bit growth in
    /// check; the terms built so far are attached.
    #[error("exact ledger capped at {limit} terms")]
    ExactBudget { limit: usize, partial: Box<CoefficientLedger> },

    /// A successive ratio r_n = a_{n+1}/a_n was requested where a_n is the
    /// zero polynomial, so the ratio is not a rational function.
    #[error("ratio undefined at index {n}: the series coefficient vanishes identically")]
    DegenerateRatio { n: i64 },

    #[error("ratio scan needs at least {need} terms, got {got}")]
    ScanTooShort { need: usize, got: usize },

    /// The accelerated terminal ratio sits too close to both characteristic
    /// roots to pick one.
    #[error(
        "ratio scan is ambiguous: distance {dist_one:.3e} to 1 versus {dist_other:.3e} to {other}"
    )]
    AmbiguousScan { other: f64, dist_one: f64, dist_other: f64 },

    #[error(transparent)]
    Exact(#[from] ExactError),
}
