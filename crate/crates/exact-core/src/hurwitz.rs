use crate::error::ExactError;
use crate::{Q, UniPoly};
use num_traits::{Signed, Zero};

/// Exact Routh stability test: `true` iff every complex root of `p` has
/// strictly negative real part.
///
/// The Routh table is computed over the rationals, so the answer is exact.
/// A vanishing first-column entry means a root on the imaginary axis or in
/// the right half-plane; both are reported as unstable.
pub fn routh_hurwitz(p: &UniPoly) -> Result<bool, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let deg = p.degree().unwrap();
    if deg == 0 {
        // No roots at all.
        return Ok(true);
    }
    // Normalize the leading coefficient to be positive; the root set is
    // unchanged under scaling by -1.
    let flip = p.leading().unwrap().is_negative();
    let coeff = |k: usize| -> Q {
        let c = p.coeff(k);
        if flip {
            -c
        } else {
            c
        }
    };
    // Necessary condition: all coefficients strictly positive.
    for k in 0..=deg {
        if !coeff(k).is_positive() {
            return Ok(false);
        }
    }
    if deg == 1 {
        return Ok(true);
    }
    // Rows indexed from the top: [a_n, a_{n-2}, ...], [a_{n-1}, a_{n-3}, ...].
    let width = deg / 2 + 1;
    let row_at = |start: usize| -> Vec<Q> {
        let mut row = Vec::with_capacity(width + 1);
        let mut k = start as i64;
        while k >= 0 {
            row.push(coeff(k as usize));
            k -= 2;
        }
        row.resize(width + 1, Q::zero());
        row
    };
    let mut prev = row_at(deg);
    let mut cur = row_at(deg - 1);
    for _ in 0..deg - 1 {
        let pivot = cur[0].clone();
        if !pivot.is_positive() {
            return Ok(false);
        }
        let next: Vec<Q> = (0..width)
            .map(|j| {
                let lhs = &pivot * &prev[j + 1];
                let rhs = &prev[0] * &cur[j + 1];
                (lhs - rhs) / &pivot
            })
            .chain(std::iter::once(Q::zero()))
            .collect();
        prev = cur;
        cur = next;
    }
    Ok(cur[0].is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn first_order_cases() {
        assert!(routh_hurwitz(&UniPoly::from_i64(&[1, 1])).unwrap()); // x + 1
        assert!(!routh_hurwitz(&UniPoly::from_i64(&[-1, 0, 1])).unwrap()); // x^2 - 1
    }

    #[test]
    fn rejects_zero_polynomial() {
        assert_eq!(routh_hurwitz(&UniPoly::zero()), Err(ExactError::ZeroPolynomial));
    }

    #[test]
    fn marginal_imaginary_axis_roots_are_unstable() {
        // x^2 + 1: roots on the axis
        assert!(!routh_hurwitz(&UniPoly::from_i64(&[1, 0, 1])).unwrap());
        // x^3 + x^2 + x + 1 = (x+1)(x^2+1)
        assert!(!routh_hurwitz(&UniPoly::from_i64(&[1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn products_of_stable_factors_are_stable() {
        // (x+1)(x+2)(x^2 + x + 5): all roots in the left half-plane
        let p = &(&UniPoly::from_i64(&[1, 1]) * &UniPoly::from_i64(&[2, 1]))
            * &UniPoly::from_i64(&[5, 1, 1]);
        assert!(routh_hurwitz(&p).unwrap());
        // Flip one factor to (x - 2)
        let bad = &(&UniPoly::from_i64(&[1, 1]) * &UniPoly::from_i64(&[-2, 1]))
            * &UniPoly::from_i64(&[5, 1, 1]);
        assert!(!routh_hurwitz(&bad).unwrap());
    }

    #[test]
    fn sign_normalization() {
        // -(x+1)(x+3) has positive roots of -p? No: roots unchanged, still stable.
        let p = &UniPoly::from_i64(&[3, 1]) * &UniPoly::from_i64(&[1, 1]);
        assert!(routh_hurwitz(&p.scale(&q(-2))).unwrap());
    }
}
