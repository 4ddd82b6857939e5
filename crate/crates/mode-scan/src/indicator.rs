//! Connection indicator: the Wronskian of the two analytic branches at the
//! matching point, with the light-cone resonances cleared.
//!
//! The raw value is holomorphic in lambda and vanishes exactly on the point
//! spectrum of the mode family (both at plain spectral values, where the two
//! branches become proportional, and at resonant ones, where either the
//! obstruction vanishes and the cleared branch is identically zero, or the
//! cleared branch is the larger-index solution and proportionality is again
//! the eigenvalue condition). The scaled value divides by a positive
//! continuous normalizer so magnitudes are comparable across the scan
//! window; it has the same zeros and the same phase.

use num_complex::Complex64;

use crate::error::{ModeScanError, SeriesSide};
use crate::ode::{ode_at_one, ode_in_x};
use crate::series::{taylor_branch, SideSeries, TwoSidedSeries, MAX_ORDER, TAIL_TOL};
use crate::types::{PotentialTag, SpectralPoint};

/// Matching point in x = rho^2. Midpoint of [0, 1]: distance 1/2 to either
/// expansion point, against convergence radii of 1 (from x = 1, and from
/// x = 0 for the rational-constant potentials; 3/5 from x = 0 in the d = 7
/// profile case), the largest joint margin available.
pub const MATCH_POINT: f64 = 0.5;

/// Indicator samples are restricted to re(lambda) >= this line; further left
/// additional light-cone resonances would need clearing.
pub const WINDOW_RE_MIN: f64 = -0.45;

/// Relative softening of the cleared indicial factors inside the normalizer.
const CLEAR_EPS_REL: f64 = 1e-6;

/// Orders m at x = 1 whose indicial factor can vanish while
/// re(lambda) >= -1/2: m <= (d-4)/2.
pub(crate) fn clear_through(d: u32) -> u32 {
    d.saturating_sub(4) / 2
}

/// One fully evaluated indicator sample.
#[derive(Debug, Clone)]
pub struct IndicatorSample {
    pub point: SpectralPoint,
    /// Cleared Wronskian at the matching point; holomorphic in lambda.
    pub raw: Complex64,
    /// raw / normalizer; same zeros and phase, magnitudes O(1) away from the
    /// spectrum.
    pub scaled: Complex64,
    pub normalizer: f64,
    /// Expansion order used on both sides.
    pub order: usize,
    pub tail_zero: f64,
    pub tail_one: f64,
}

fn branch_pair(
    point: &SpectralPoint,
    order: usize,
) -> Result<(SideSeries, SideSeries), ModeScanError> {
    let ode_x = ode_in_x(point)?;
    let ode_w = ode_at_one(&ode_x);
    let s0 = taylor_branch(&ode_x, MATCH_POINT, order, 0)?;
    let s1 = taylor_branch(&ode_w, 1.0 - MATCH_POINT, order, clear_through(point.d))?;
    Ok((s0, s1))
}

/// Evaluate the indicator at a fixed expansion order.
pub fn indicator_sample(
    point: &SpectralPoint,
    order: usize,
) -> Result<IndicatorSample, ModeScanError> {
    if !point.lambda.re.is_finite() || !point.lambda.im.is_finite() {
        return Err(ModeScanError::PointOutsideWindow {
            re: point.lambda.re,
            min: WINDOW_RE_MIN,
        });
    }
    if point.lambda.re < WINDOW_RE_MIN {
        return Err(ModeScanError::PointOutsideWindow {
            re: point.lambda.re,
            min: WINDOW_RE_MIN,
        });
    }
    let (s0, s1) = branch_pair(point, order)?;
    let (tail_zero, tail_one) = (s0.tail_ratio(), s1.tail_ratio());
    if tail_zero > TAIL_TOL {
        return Err(ModeScanError::TruncationTail {
            side: SeriesSide::AtZero,
            order,
            tail: tail_zero,
            cap: MAX_ORDER,
        });
    }
    if tail_one > TAIL_TOL {
        return Err(ModeScanError::TruncationTail {
            side: SeriesSide::AtOne,
            order,
            tail: tail_one,
            cap: MAX_ORDER,
        });
    }

    let (y0v, y0d) = (s0.value(), s0.deriv());
    let (y1v, y1d) = (s1.value(), s1.deriv());
    // d/dx = -d/dw on the cleared side.
    let raw = -(y0v * y1d + y0d * y1v);

    let mut cleared_soft = 1.0;
    for (ifac, scale) in s1.cleared.iter().zip(&s1.cleared_scale) {
        cleared_soft *= ifac.norm() + CLEAR_EPS_REL * scale;
    }
    let normalizer =
        (1.0 + y0v.norm() + y0d.norm()) * (cleared_soft + y1v.norm() + y1d.norm());
    let scaled = raw / normalizer;

    Ok(IndicatorSample {
        point: *point,
        raw,
        scaled,
        normalizer,
        order,
        tail_zero,
        tail_one,
    })
}

/// Starting expansion order for a spectral point: grows with |lambda| (the
/// coefficients decay only beyond m ~ |second index|) and doubles for the
/// d = 7 profile potential, whose x = 0 disk has radius 3/5 only.
pub(crate) fn initial_order(point: &SpectralPoint) -> usize {
    let base = 160.0 + 6.0 * point.lambda.norm();
    let base = if point.potential == PotentialTag::UStar && point.d != 9 {
        2.0 * base + 64.0
    } else {
        base
    };
    ((base / 32.0).ceil() as usize * 32).min(MAX_ORDER)
}

/// Evaluate with automatic order escalation until the tails certify
/// convergence at the matching point.
pub fn indicator_sample_auto(point: &SpectralPoint) -> Result<IndicatorSample, ModeScanError> {
    indicator_from(point, initial_order(point))
}

pub(crate) fn indicator_from(
    point: &SpectralPoint,
    start_order: usize,
) -> Result<IndicatorSample, ModeScanError> {
    let mut order = start_order.min(MAX_ORDER);
    loop {
        match indicator_sample(point, order) {
            Err(ModeScanError::TruncationTail { .. }) if order < MAX_ORDER => {
                order = (order * 2).min(MAX_ORDER);
            }
            other => return other,
        }
    }
}

/// Scaled connection indicator: zero exactly on the point spectrum of the
/// mode family at this angular degree.
pub fn connection_indicator(point: &SpectralPoint) -> Result<Complex64, ModeScanError> {
    Ok(indicator_sample_auto(point)?.scaled)
}

/// The two analytic branches behind an indicator evaluation, converged at
/// the matching point.
pub fn two_sided_series(
    point: &SpectralPoint,
    order: usize,
) -> Result<TwoSidedSeries, ModeScanError> {
    let (s0, s1) = branch_pair(point, order)?;
    Ok(TwoSidedSeries {
        tail_zero: s0.tail_ratio(),
        tail_one: s1.tail_ratio(),
        at_zero_weighted: s0.weighted,
        at_one_weighted: s1.weighted,
        weight: MATCH_POINT,
        matching_point: MATCH_POINT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn vanishes_at_the_known_modes() {
        // (l, lambda) eigenpairs of the d = 9 profile linearization.
        for (ell, lam, tol) in [
            (0u32, 3.0, 1e-10),
            (0, 1.0, 1e-9),
            (1, 1.0, 1e-12),
            (1, 0.0, 1e-9),
        ] {
            let p = SpectralPoint::u_star(9, ell, re(lam));
            let ind = connection_indicator(&p).unwrap();
            assert!(
                ind.norm() < tol,
                "l={ell} lambda={lam}: |indicator| = {:.3e}",
                ind.norm()
            );
        }
    }

    #[test]
    fn nonzero_at_the_log_resonance_lambda_two() {
        let p = SpectralPoint::u_star(9, 0, re(2.0));
        let ind = connection_indicator(&p).unwrap();
        assert!(ind.norm() > 1e-4, "|indicator| = {:.3e}", ind.norm());
    }

    #[test]
    fn nonzero_at_non_eigen_resonances_of_higher_modes() {
        for ell in [2u32, 3, 4] {
            for lam in [0.0, 1.0] {
                let p = SpectralPoint::u_star(9, ell, re(lam));
                let ind = connection_indicator(&p).unwrap();
                assert!(
                    ind.norm() > 1e-6,
                    "l={ell} lambda={lam}: |indicator| = {:.3e}",
                    ind.norm()
                );
            }
        }
    }

    #[test]
    fn continuous_through_a_resonant_line() {
        // Non-eigen resonance: l = 2, lambda = 1. The cleared construction
        // is holomorphic, so a 3e-7 step moves the indicator by O(step).
        let at = connection_indicator(&SpectralPoint::u_star(9, 2, re(1.0))).unwrap();
        let near = connection_indicator(&SpectralPoint::u_star(9, 2, re(1.0 + 3e-7))).unwrap();
        assert!((at - near).norm() < 1e-3 * (1.0 + at.norm()));
    }

    #[test]
    fn truncation_reported_when_capped_below_need() {
        let p = SpectralPoint::u_star(9, 0, Complex64::new(0.4, 0.1));
        let err = indicator_sample(&p, 16).unwrap_err();
        assert!(matches!(err, ModeScanError::TruncationTail { .. }));
    }

    #[test]
    fn window_floor_enforced() {
        let p = SpectralPoint::u_star(9, 0, re(-0.6));
        assert!(matches!(
            indicator_sample(&p, 64),
            Err(ModeScanError::PointOutsideWindow { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn conjugate_symmetry(
            lre in -0.3f64..5.0,
            lim in 0.05f64..1.8,
            ell in 0u32..4,
            pot in prop_oneof![
                Just(PotentialTag::UStar),
                Just(PotentialTag::ConstantTwelve),
                Just(PotentialTag::Free),
            ],
        ) {
            let p = SpectralPoint::new(9, ell, Complex64::new(lre, lim), pot);
            let here = connection_indicator(&p).unwrap();
            let conj = connection_indicator(&p.conj()).unwrap();
            prop_assert!(
                (conj - here.conj()).norm() <= 1e-11 * (1.0 + here.norm()),
                "asymmetry {:.3e}", (conj - here.conj()).norm()
            );
        }
    }
}
