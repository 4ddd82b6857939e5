use exact_core::{q, q_to_f64, MPoly, Q};
use num_complex::Complex64;

use crate::error::SeriesError;
use crate::ledger::frobenius_coeffs_symbolic_in_form;
use crate::ratfunc::RatLam;
use crate::recurrence::{at_n_ell, FrobeniusForm, ARITY, VAR_L, VAR_LAM, VAR_N};

/// The three quasi-solution families, keyed by the native (chart, ell)
/// pairings they approximate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum QuasiKind {
    LowZero,
    LowOne,
    High,
}

impl QuasiKind {
    pub(crate) fn of(form: FrobeniusForm, ell: u32) -> Option<Self> {
        match (form, ell) {
            (FrobeniusForm::LowEll, 0) => Some(QuasiKind::LowZero),
            (FrobeniusForm::LowEll, 1) => Some(QuasiKind::LowOne),
            (FrobeniusForm::HighEll, e) if e >= 2 => Some(QuasiKind::High),
            _ => None,
        }
    }
}

/// Quasi-solution as a (numerator, denominator) pair of polynomials in
/// (n, ell, lambda). The numerator is quadratic in lambda; the denominator
/// depends on n (and ell) only and is strictly positive for n >= 0.
///
/// LowZero:  [lambda^2 + (4n+9) lambda + 4(n+1)^2] / [2(2n+9)(n+1)]
/// LowOne:   [(n+4) lambda^2 + (4n+11)(n+4) lambda + 2(2n+11)(n+1)^2]
///             / [2(2n+11)(n+1)(n+4)]
/// High:     [14 lambda^2 + 16(6n+3 ell+10) lambda + (2n+2 ell+9)(17 ell+48n-48)]
///             / [48(n+1)(2n+2 ell+9)]
pub(crate) fn quasi_num_den(kind: QuasiKind) -> (MPoly<Q>, MPoly<Q>) {
    let n = MPoly::<Q>::var(ARITY, VAR_N);
    let l = MPoly::<Q>::var(ARITY, VAR_L);
    let lam = MPoly::<Q>::var(ARITY, VAR_LAM);
    let c = |k: i64| MPoly::<Q>::constant(ARITY, q(k));
    let lam2 = &lam * &lam;
    match kind {
        QuasiKind::LowZero => {
            let np1 = &n + &c(1);
            let num = &(&lam2 + &(&lam * &(&n.scale(&q(4)) + &c(9))))
                + &(&np1 * &np1).scale(&q(4));
            let den = (&(&n.scale(&q(2)) + &c(9)) * &np1).scale(&q(2));
            (num, den)
        }
        QuasiKind::LowOne => {
            let np1 = &n + &c(1);
            let np4 = &n + &c(4);
            let tw11 = &n.scale(&q(2)) + &c(11);
            let num = &(&(&lam2 * &np4)
                + &(&lam * &(&(&n.scale(&q(4)) + &c(11)) * &np4)))
                + &(&tw11 * &(&np1 * &np1)).scale(&q(2));
            let den = (&(&tw11 * &np1) * &np4).scale(&q(2));
            (num, den)
        }
        QuasiKind::High => {
            let np1 = &n + &c(1);
            let g = &(&n.scale(&q(2)) + &l.scale(&q(2))) + &c(9);
            let num = &(&lam2.scale(&q(14))
                + &(&lam * &(&(&n.scale(&q(6)) + &l.scale(&q(3))) + &c(10))).scale(&q(16)))
                + &(&g * &(&(&l.scale(&q(17)) + &n.scale(&q(48))) - &c(48)));
            let den = (&np1 * &g).scale(&q(48));
            (num, den)
        }
    }
}

fn kind_for_ell(ell: u32) -> QuasiKind {
    QuasiKind::of(FrobeniusForm::native(ell), ell).expect("every ell has a native kind")
}

fn check_quasi_index(n: i64) -> Result<(), SeriesError> {
    if n < 0 {
        Err(SeriesError::NegativeQuasiIndex(n))
    } else {
        Ok(())
    }
}

/// Quasi-solution value at an exact rational spectral point. The family is
/// chosen by ell; all three tend to 1 as n grows.
pub fn quasi_solution(ell: u32, n: i64, lambda: &Q) -> Result<Q, SeriesError> {
    check_quasi_index(n)?;
    let (num, den) = quasi_num_den(kind_for_ell(ell));
    let point = [q(n), q(ell as i64), lambda.clone()];
    Ok(num.eval(&point) / den.eval(&point))
}

/// Quasi-solution at a complex floating-point spectral value, evaluated from
/// the exact lambda-coefficients.
pub fn quasi_solution_f64(ell: u32, n: i64, lambda: Complex64) -> Result<Complex64, SeriesError> {
    check_quasi_index(n)?;
    let (num, den) = quasi_num_den(kind_for_ell(ell));
    let point = [q(n), q(ell as i64), q(0)];
    let mut acc = Complex64::new(0.0, 0.0);
    for slice in num.coeffs_in(VAR_LAM).iter().rev() {
        acc = acc * lambda + q_to_f64(&slice.eval(&point));
    }
    Ok(acc / q_to_f64(&den.eval(&point)))
}

/// Quasi-solution with lambda kept symbolic, at concrete (kind, n).
pub(crate) fn quasi_ratlam(kind: QuasiKind, n: i64, ell: u32) -> RatLam {
    let (num, den) = quasi_num_den(kind);
    let num = at_n_ell(&num, n, ell);
    let den = at_n_ell(&den, n, ell);
    RatLam::new(num, den).expect("quasi denominator is positive for n >= 0")
}

/// The relative-difference data (delta_n, epsilon_n, C_n) at concrete
/// (ell, n) with lambda kept symbolic. These drive the update law
///
///   delta_{n+1} = epsilon_n - C_n delta_n / (1 + delta_n),
///
/// where delta_n = r_n / quasi_n - 1; the law is an algebraic identity for
/// any quasi-solution choice, so these three functions carry the full ratio
/// dynamics.
pub fn delta_epsilon_c(ell: u32, n: i64) -> Result<(RatLam, RatLam, RatLam), SeriesError> {
    check_quasi_index(n)?;
    let form = FrobeniusForm::native(ell);
    let ledger = frobenius_coeffs_symbolic_in_form(form, ell, (n as usize + 2).max(3))?;
    let entries = ledger.symbolic().expect("symbolic builder");
    let eps = entries.epsilon[n as usize].clone();
    let cn = entries.c[n as usize].clone();
    let delta = entries.delta[n as usize]
        .clone()
        .ok_or(SeriesError::DegenerateRatio { n })?;
    Ok((delta, eps, cn))
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::qr;
    use num_traits::{Signed, Zero};

    #[test]
    fn low_zero_quasi_at_lambda_zero_is_a_simple_ratio() {
        // (2n+2)/(2n+9) at lambda = 0; n = 0 gives 2/9.
        for n in 0..12 {
            let v = quasi_solution(0, n, &q(0)).unwrap();
            assert_eq!(v, qr(2 * n + 2, 2 * n + 9));
        }
    }

    #[test]
    fn high_quasi_spot_value() {
        // R_1(2, 0) = 17*2/(48*2) + 0 = 17/48 (the (n-1)/(n+1) term vanishes).
        assert_eq!(quasi_solution(2, 1, &q(0)).unwrap(), qr(17, 48));
    }

    #[test]
    fn all_families_tend_to_one() {
        let lam = qr(7, 3);
        for ell in [0u32, 1, 2, 9] {
            let mut prev_gap: Option<Q> = None;
            for k in [100i64, 10_000, 1_000_000] {
                let gap = (quasi_solution(ell, k, &lam).unwrap() - q(1)).abs();
                assert!(gap < qr(10, k), "ell {ell}, n {k}");
                if let Some(p) = prev_gap {
                    assert!(gap < p);
                }
                prev_gap = Some(gap);
            }
        }
    }

    #[test]
    fn float_evaluation_matches_exact() {
        for (ell, n) in [(0u32, 0i64), (1, 4), (2, 3), (6, 7)] {
            let exact = quasi_solution(ell, n, &qr(-13, 4)).unwrap();
            let f = quasi_solution_f64(ell, n, Complex64::new(-3.25, 0.0)).unwrap();
            assert!((f.re - q_to_f64(&exact)).abs() < 1e-14);
            assert!(f.im.abs() < 1e-16);
        }
    }

    #[test]
    fn negative_index_is_rejected() {
        assert!(matches!(
            quasi_solution(0, -1, &q(2)),
            Err(SeriesError::NegativeQuasiIndex(-1))
        ));
        assert!(matches!(delta_epsilon_c(1, -3), Err(SeriesError::NegativeQuasiIndex(-3))));
    }

    #[test]
    fn update_law_residual_vanishes_identically() {
        // delta_{n+1} = eps_n - C_n delta_n/(1+delta_n) as rational functions.
        for (ell, n) in [(0u32, 2i64), (0, 5), (1, 3), (1, 6), (2, 1), (2, 4), (5, 2)] {
            let (delta, eps, cn) = delta_epsilon_c(ell, n).unwrap();
            let (delta_next, _, _) = delta_epsilon_c(ell, n + 1).unwrap();
            let one = RatLam::one();
            let residual = &delta_next - &(&eps - &(&cn * &(&delta / &(&one + &delta))));
            assert!(residual.is_zero(), "ell {ell}, n {n}");
        }
    }
}
