//! Exact rational arithmetic and the certificate primitives that polynomial
//! inequality proofs reduce to: sparse multivariate polynomials over the
//! rationals, univariate Sturm sequences, an exact Routh table, the
//! imaginary-axis modulus split, and a coefficient-positivity certifier.
//!
//! Everything in this crate is a pure function on immutable values and is
//! safe to call from many threads at once.

pub mod certify;
pub mod error;
pub mod gaussian;
pub mod hurwitz;
pub mod mpoly;
pub mod unipoly;

pub use certify::{certify_nonneg, sturm_count, CertificateReport, RootInterval, Tactic, Verdict};
pub use error::ExactError;
pub use gaussian::GaussianRational;
pub use hurwitz::routh_hurwitz;
pub use mpoly::{modulus_square_split, Coeff, MPoly};
pub use unipoly::UniPoly;

/// Arbitrary-precision rational number in canonical form (reduced, positive
/// denominator). `num::BigRational` maintains both invariants internally.
pub type Q = num::BigRational;

/// Integer as a rational.
pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Rational from a numerator/denominator pair.
///
/// Panics on a zero denominator.
pub fn qr(num: i64, den: i64) -> Q {
    Q::new(num.into(), den.into())
}

/// Exact rational value of a finite `f64` (every finite float is a dyadic
/// rational). Panics on NaN or infinity.
pub fn q_from_f64(x: f64) -> Q {
    Q::from_float(x).expect("finite float")
}

/// Closest `f64` to a rational. Robust for huge numerators/denominators of
/// moderate quotient: both parts are shifted down by a common power of two
/// before the float division.
pub fn q_to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = x.to_f64() {
        if v.is_finite() || x.denom().bits() < 1000 {
            return v;
        }
    }
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift = (nb.max(db) - 512).max(0) as u64;
    let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        let x = qr(6, -4);
        assert_eq!(x, qr(-3, 2));
        assert!(x.denom() > &num::BigInt::from(0));
    }

    #[test]
    fn f64_roundtrip_on_small_values() {
        assert_eq!(q_to_f64(&qr(1, 4)), 0.25);
        assert_eq!(q_to_f64(&q(-7)), -7.0);
    }
}
