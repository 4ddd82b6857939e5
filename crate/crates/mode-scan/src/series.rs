//! Frobenius expansions of the analytic (index-0) branches.
//!
//! With polynomial coefficients p2 = sum A_k v^k, p1 = sum B_k v^k,
//! p0 = sum C_k v^k (A_0 = 0 at a regular singular point), the Taylor
//! coefficients of the index-0 solution satisfy the finite-term recurrence
//!
//!   I(m) c_m + sum_{j>=1} [ A_{j+1}(m-j)(m-j-1) + B_j (m-j) + C_{j-1} ] c_{m-j} = 0,
//!   I(s) = A_1 s(s-1) + B_0 s.
//!
//! At x = 1 the second index (d-5)/2 - lambda collides with a positive
//! integer m exactly at lambda = (d-5)/2 - m, so for spectral windows with
//! re(lambda) >= -1/2 the orders m = 1 .. floor((d-4)/2) can resonate. The
//! branch built here is the resonance-cleared series
//!
//!   ct_m = c_m * prod_{m' <= M} I(m'),
//!
//! computed without ever dividing by a cleared I factor; each ct_m is then a
//! polynomial in the I's and the recurrence data, holomorphic in lambda
//! across the resonances. Off resonance it is the plain branch rescaled; at
//! an exact resonance it degenerates to (obstruction) * (larger-index
//! branch), vanishing identically precisely when the resonant order is
//! solvable (which is the eigenvalue situation with an analytic-at-1 fundamental
//! pair).

use num_complex::Complex64;

use crate::error::ModeScanError;
use crate::ode::OdePolys;

/// Hard cap on the expansion order; reaching it with a bad tail is reported
/// as a truncation failure.
pub const MAX_ORDER: usize = 4096;
/// Tail-ratio bound certifying convergence at the matching point.
pub const TAIL_TOL: f64 = 1e-12;
/// Number of trailing weighted coefficients summed for the tail estimate.
const TAIL_WINDOW: usize = 5;

/// One analytic branch, expanded in its own variable v and stored in the
/// rescaled variable X = v / t: entry m is c_m t^m. The rescaling keeps every
/// stored number of the order of the partial sums at the matching point
/// v = t, so tails and overflow behave uniformly in the order.
#[derive(Debug, Clone)]
pub(crate) struct SideSeries {
    pub weighted: Vec<Complex64>,
    pub t: f64,
    /// The indicial factors I(1) .. I(M) absorbed by the clearing (in the
    /// rescaled variable, a fixed positive multiple of the true ones).
    pub cleared: Vec<Complex64>,
    /// Magnitude scales of the cleared factors, for relative comparisons.
    pub cleared_scale: Vec<f64>,
}

impl SideSeries {
    /// Branch value at v = t.
    pub fn value(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.weighted.iter().rev() {
            acc += c;
        }
        acc
    }

    /// d/dv of the branch at v = t.
    pub fn deriv(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, &c) in self.weighted.iter().enumerate().rev() {
            acc += (m as f64) * c;
        }
        acc / self.t
    }

    /// Relative weight of the last few stored terms; small iff the series
    /// has converged at the matching point.
    pub fn tail_ratio(&self) -> f64 {
        let n = self.weighted.len();
        let tail: f64 = self.weighted[n.saturating_sub(TAIL_WINDOW)..]
            .iter()
            .map(|c| c.norm())
            .sum();
        let total: f64 = self.weighted.iter().map(|c| c.norm()).sum();
        tail / (total + 1e-300)
    }
}

/// Expand the index-0 branch of `ode` to order `n`, evaluated-ready at
/// v = t, clearing the indicial factors I(1) .. I(clear_through).
pub(crate) fn taylor_branch(
    ode: &OdePolys,
    t: f64,
    n: usize,
    clear_through: u32,
) -> Result<SideSeries, ModeScanError> {
    let zero = Complex64::new(0.0, 0.0);
    // Rescale v = t X: multiply p2 coefficients by t^k, p1 by t^{k+1}, p0 by
    // t^{k+2} (the common t^{-2} is dropped).
    let scale_poly = |p: &[Complex64], extra: i32| -> Vec<Complex64> {
        p.iter()
            .enumerate()
            .map(|(k, &c)| c * t.powi(k as i32 + extra))
            .collect()
    };
    let a = scale_poly(&ode.p2, 0);
    let b = scale_poly(&ode.p1, 1);
    let c = scale_poly(&ode.p0, 2);

    let a1 = a[1];
    let b0 = b[0];
    debug_assert!(a[0].norm() <= 1e-12 * a1.norm(), "not a regular singular point");

    let ifac = |m: usize| -> Complex64 {
        let mf = m as f64;
        a1 * mf * (mf - 1.0) + b0 * mf
    };
    let iscale = |m: usize| -> f64 {
        let mf = m as f64;
        a1.norm() * mf * mf + b0.norm() * mf + f64::MIN_POSITIVE
    };
    // T_j(m) = A_{j+1}(m-j)(m-j-1) + B_j(m-j) + C_{j-1}.
    let tj = |m: usize, j: usize| -> Complex64 {
        let r = (m - j) as f64;
        let mut v = zero;
        if j + 1 < a.len() {
            v += a[j + 1] * r * (r - 1.0);
        }
        if j < b.len() {
            v += b[j] * r;
        }
        if j >= 1 && j - 1 < c.len() {
            v += c[j - 1];
        }
        v
    };
    let jmax = (a.len().saturating_sub(2)).max(b.len().saturating_sub(1)).max(c.len());

    let big_m = clear_through as usize;
    let cleared: Vec<Complex64> = (1..=big_m).map(ifac).collect();
    let cleared_scale: Vec<f64> = (1..=big_m).map(iscale).collect();

    let mut coeffs = vec![zero; n + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    // Orders 1..=M, never dividing: u_m = c_m prod_{k<=m} I(k) satisfies
    //   u_m = - sum_j T_j(m) u_{m-j} prod_{k=m-j+1}^{m-1} I(k).
    for m in 1..=big_m.min(n) {
        let mut acc = zero;
        for j in 1..=jmax.min(m) {
            let mut term = tj(m, j) * coeffs[m - j];
            for k in (m - j + 1)..m {
                term *= cleared[k - 1];
            }
            acc -= term;
        }
        coeffs[m] = acc;
    }
    // Rescale every order to the uniform clearing prod_{k<=M} I(k).
    for m in 0..=big_m.min(n) {
        for k in (m + 1)..=big_m {
            coeffs[m] = coeffs[m] * cleared[k - 1];
        }
    }
    // Plain recurrence above the cleared window.
    for m in (big_m + 1)..=n {
        let denom = ifac(m);
        if denom.norm() < 1e-12 * iscale(m) {
            return Err(ModeScanError::UnclearedResonance { order: m });
        }
        let mut acc = zero;
        for j in 1..=jmax.min(m) {
            acc -= tj(m, j) * coeffs[m - j];
        }
        coeffs[m] = acc / denom;
    }

    Ok(SideSeries { weighted: coeffs, t, cleared, cleared_scale })
}

/// Public snapshot of the two analytic branches meeting at the matching
/// point. Coefficient entry m carries the weight (1/2)^m (both expansion
/// disks are sampled at their midpoint), which is also the natural scale for
/// the tail ratios.
#[derive(Debug, Clone)]
pub struct TwoSidedSeries {
    /// Weighted coefficients of the branch analytic at x = 0.
    pub at_zero_weighted: Vec<Complex64>,
    /// Weighted coefficients of the resonance-cleared branch analytic at
    /// x = 1 (expanded in w = 1 - x).
    pub at_one_weighted: Vec<Complex64>,
    /// Weight base: entry m of either side is c_m * weight^m.
    pub weight: f64,
    pub matching_point: f64,
    pub tail_zero: f64,
    pub tail_one: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicator::MATCH_POINT;
    use crate::ode::{ode_at_one, ode_in_x};
    use crate::types::SpectralPoint;
    use exact_core::{q_to_f64, qr};
    use num_complex::Complex64;
    use spectral_series::{frobenius_coeffs_in_form, FrobeniusForm};

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn at_zero_series_matches_composed_ledger_product() {
        // Independent construction of the same branch: the ledger recurrence
        // produces y with h = (7/5 + x)^{-3} y, so the h coefficients are the
        // Cauchy product of y's with the binomial series of (1 + 5x/7)^{-3}.
        let ell = 2u32;
        let lam = qr(3, 4);
        let n = 48;
        let ledger = frobenius_coeffs_in_form(FrobeniusForm::LowEll, ell, &lam, n).unwrap();
        let y: Vec<f64> = ledger.exact().unwrap().a.iter().map(q_to_f64).collect();

        let mut binom = vec![0.0f64; n + 1];
        binom[0] = 1.0;
        for j in 1..=n {
            // (1+u)^{-3} coefficients: (-1)^j (j+1)(j+2)/2 with u = 5x/7.
            binom[j] = binom[j - 1] * (-(5.0 / 7.0)) * ((j + 2) as f64) / (j as f64);
        }
        let oracle: Vec<f64> = (0..=n)
            .map(|m| (0..=m).map(|k| y[k] * binom[m - k]).sum())
            .collect();

        let p = SpectralPoint::u_star(9, ell, re(0.75));
        let ode = ode_in_x(&p).unwrap();
        let side = taylor_branch(&ode, MATCH_POINT, n, 0).unwrap();
        for m in 0..=n {
            let mine = side.weighted[m] * (1.0 / MATCH_POINT).powi(m as i32);
            let diff = (mine - re(oracle[m])).norm();
            assert!(
                diff <= 1e-11 * (1.0 + oracle[m].abs()),
                "m={m}: {mine} vs {}",
                oracle[m]
            );
        }
    }

    #[test]
    fn cleared_branch_vanishes_identically_at_solvable_resonance() {
        // l = 1, lambda = 1: the resonant order is solvable (the mode is an
        // eigenfunction analytic at both ends with nonzero light-cone value),
        // and the integer-scaled data makes the cancellation exact in f64.
        let p = SpectralPoint::u_star(9, 1, re(1.0));
        let flipped = ode_at_one(&ode_in_x(&p).unwrap());
        let side = taylor_branch(&flipped, MATCH_POINT, 60, 2).unwrap();
        for (m, c) in side.weighted.iter().enumerate() {
            assert_eq!(c.norm(), 0.0, "ct_{m} = {c}");
        }
    }

    #[test]
    fn cleared_branch_is_larger_index_branch_at_log_resonance() {
        // l = 0, lambda = 1: resonant order 1 with nonvanishing obstruction,
        // so the cleared branch starts at order 1 (it is proportional to the
        // w^1 branch) and is not identically zero.
        let p = SpectralPoint::u_star(9, 0, re(1.0));
        let flipped = ode_at_one(&ode_in_x(&p).unwrap());
        let side = taylor_branch(&flipped, MATCH_POINT, 60, 2).unwrap();
        assert_eq!(side.weighted[0].norm(), 0.0);
        assert!(side.weighted[1].norm() > 0.0);
        assert!(side.value().norm() > 0.0);
    }

    #[test]
    fn tail_ratio_reflects_truncation_order() {
        let p = SpectralPoint::u_star(9, 0, Complex64::new(0.7, 0.3));
        let ode = ode_in_x(&p).unwrap();
        let short = taylor_branch(&ode, MATCH_POINT, 20, 0).unwrap();
        let long = taylor_branch(&ode, MATCH_POINT, 220, 0).unwrap();
        assert!(short.tail_ratio() > TAIL_TOL);
        assert!(long.tail_ratio() < TAIL_TOL);
        // The two agree to within the short tail.
        assert!((short.value() - long.value()).norm() < 1e-6 * long.value().norm());
    }
}
