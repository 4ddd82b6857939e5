use exact_core::{q, qr, GaussianRational, MPoly, Q, UniPoly};
use num_complex::Complex64;

use crate::error::SeriesError;
use crate::ratfunc::RatLam;

/// Variable layout shared by all symbolic computations in this crate:
/// slot 0 is the series index n, slot 1 the angular degree ell, slot 2 the
/// spectral parameter lambda (after a modulus-square split the same slot
/// holds t^2).
pub(crate) const VAR_N: usize = 0;
pub(crate) const VAR_L: usize = 1;
pub(crate) const VAR_LAM: usize = 2;
pub(crate) const ARITY: usize = 3;

/// Which chart the series expansion lives in.
///
/// `LowEll` expands in x = rho^2, which keeps the outer singularity at
/// x = -7/5; it is the natural chart for ell in {0, 1}. `HighEll` expands in
/// x = 12 rho^2 / (5 rho^2 + 7), which moves that singularity to x = 12/5 and
/// is the natural chart for ell >= 2. Either chart accepts any ell for
/// exploration; `HeunParams::exploratory` records a non-native pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrobeniusForm {
    LowEll,
    HighEll,
}

impl FrobeniusForm {
    /// The chart an angular degree natively belongs to.
    pub fn native(ell: u32) -> Self {
        if ell < 2 {
            FrobeniusForm::LowEll
        } else {
            FrobeniusForm::HighEll
        }
    }

    pub fn is_native(self, ell: u32) -> bool {
        Self::native(ell) == self
    }
}

/// Data of the degree-two Fuchsian equation with regular singular points
/// {0, 1, mu, infinity}, written as
///
///   y'' + (gamma/x + delta/(x-1) + epsilon/(x-mu)) y'
///      + (alpha beta x - accessory) / (x (x-1) (x-mu)) y = 0.
///
/// `delta`, `alpha`, `beta`, and `accessory` are polynomials in lambda.
#[derive(Debug, Clone)]
pub struct HeunParams {
    pub form: FrobeniusForm,
    pub ell: u32,
    /// True when the chart is used outside its native ell range.
    pub exploratory: bool,
    /// Location of the movable singularity: -7/5 or 12/5.
    pub mu: Q,
    /// Exponent coefficient at x = 0: (9 + 2 ell)/2.
    pub gamma: Q,
    /// Exponent coefficient at x = 1: lambda - 1.
    pub delta: UniPoly,
    /// Exponent coefficient at x = mu: -6 in the low chart, 3/2 in the high.
    pub epsilon: Q,
    pub alpha: UniPoly,
    pub beta: UniPoly,
    pub accessory: UniPoly,
}

impl HeunParams {
    /// Frobenius indices of the x = 0 singular point, roots of
    /// s(s - 1) + gamma s = 0: always 0 and -(7 + 2 ell)/2 here.
    pub fn frobenius_indices(&self) -> (Q, Q) {
        (Q::from_integer(0.into()), q(1) - &self.gamma)
    }
}

pub fn heun_params(form: FrobeniusForm, ell: u32) -> HeunParams {
    let le = q(ell as i64);
    let lam = UniPoly::x();
    let gamma = (q(9) + q(2) * &le) / q(2);
    let delta = &lam - &UniPoly::one();
    // alpha = (lambda - 3 + ell)/2 in both charts.
    let alpha = (&lam + &UniPoly::constant(&le - q(3))).scale(&qr(1, 2));
    match form {
        FrobeniusForm::LowEll => {
            let beta = (&lam + &UniPoly::constant(&le - q(4))).scale(&qr(1, 2));
            // accessory = -(7 (lambda-3)(lambda+8) + 7 ell^2 + (14 lambda + 95) ell)/20
            let lm3 = &lam - &UniPoly::constant(q(3));
            let lp8 = &lam + &UniPoly::constant(q(8));
            let acc = &(&(&lm3 * &lp8).scale(&q(7))
                + &UniPoly::constant(q(7) * &le * &le))
                + &(&lam.scale(&q(14)) + &UniPoly::constant(q(95))).scale(&le);
            HeunParams {
                form,
                ell,
                exploratory: !form.is_native(ell),
                mu: qr(-7, 5),
                gamma,
                delta,
                epsilon: q(-6),
                alpha,
                beta,
                accessory: acc.scale(&qr(-1, 20)),
            }
        }
        FrobeniusForm::HighEll => {
            let beta = (&lam + &UniPoly::constant(&le + q(11))).scale(&qr(1, 2));
            // accessory = (17 ell^2 + 2 ell (55 + 12 lambda) + 7 lambda^2 + 80 lambda - 303)/20.
            // The +7 lambda^2 term is forced: expanding the series into the
            // equation reproduces the three-term recurrence only with this
            // sign, and the recurrence is corroborated by the quasi-solution
            // and envelope identities.
            let acc = &(&UniPoly::constant(q(17) * &le * &le)
                + &(&lam.scale(&q(24)) + &UniPoly::constant(q(110))).scale(&le))
                + &UniPoly::from_coeffs(vec![q(-303), q(80), q(7)]);
            HeunParams {
                form,
                ell,
                exploratory: !form.is_native(ell),
                mu: qr(12, 5),
                gamma,
                delta,
                epsilon: qr(3, 2),
                alpha,
                beta,
                accessory: acc.scale(&qr(1, 20)),
            }
        }
    }
}

/// Numerators (P_A, P_B) of the three-term recurrence coefficients, as
/// polynomials in (n, ell, lambda).
pub(crate) fn coeff_numerators(form: FrobeniusForm) -> (MPoly<Q>, MPoly<Q>) {
    let n = MPoly::<Q>::var(ARITY, VAR_N);
    let l = MPoly::<Q>::var(ARITY, VAR_L);
    let lam = MPoly::<Q>::var(ARITY, VAR_LAM);
    let c = |k: i64| MPoly::<Q>::constant(ARITY, q(k));
    match form {
        FrobeniusForm::LowEll => {
            // P_A = 7 lambda (lambda + 9) + 7 ell^2 + ell (8n + 14 lambda + 103)
            //       + 8 n^2 + 4 (7 lambda + 34) n - 40
            let pa = &(&(&(&lam * &(&lam + &c(9))).scale(&q(7)) + &(&l * &l).scale(&q(7)))
                + &(&l * &(&(&n.scale(&q(8)) + &lam.scale(&q(14))) + &c(103))))
                + &(&(&(&n * &n).scale(&q(8)) + &(&n * &(&lam.scale(&q(7)) + &c(34))).scale(&q(4)))
                    - &c(40));
            // P_B = 5 (lambda + ell + 2n - 4)(lambda + ell + 2n - 3)
            let base = &(&lam + &l) + &n.scale(&q(2));
            let pb = (&(&base - &c(4)) * &(&base - &c(3))).scale(&q(5));
            (pa, pb)
        }
        FrobeniusForm::HighEll => {
            // P_A = 68 n^2 + (48 lambda + 68 ell + 356) n + 7 lambda^2 + 17 ell^2
            //       + 24 lambda ell + 128 lambda + 178 ell - 15
            let pa = &(&(&n * &n).scale(&q(68))
                + &(&n * &(&(&lam.scale(&q(48)) + &l.scale(&q(68))) + &c(356))))
                + &(&(&(&(&lam * &lam).scale(&q(7)) + &(&l * &l).scale(&q(17)))
                    + &(&(&lam * &l).scale(&q(24)) + &lam.scale(&q(128))))
                    + &(&l.scale(&q(178)) - &c(15)));
            // P_B = -5 (2n + lambda + ell + 11)(2n + lambda + ell - 3)
            let base = &(&lam + &l) + &n.scale(&q(2));
            let pb = (&(&base + &c(11)) * &(&base - &c(3))).scale(&q(-5));
            (pa, pb)
        }
    }
}

/// Common denominator of the recurrence coefficients: 14 (n+2)(2n + 2 ell + 11)
/// in the low chart, 24 (n+2)(2n + 2 ell + 11) in the high chart. It is
/// strictly positive for every n >= -1, so the recurrence never degenerates.
pub(crate) fn coeff_denominator(form: FrobeniusForm) -> MPoly<Q> {
    let n = MPoly::<Q>::var(ARITY, VAR_N);
    let l = MPoly::<Q>::var(ARITY, VAR_L);
    let c = |k: i64| MPoly::<Q>::constant(ARITY, q(k));
    let scale = match form {
        FrobeniusForm::LowEll => q(14),
        FrobeniusForm::HighEll => q(24),
    };
    (&(&n + &c(2)) * &(&(&n.scale(&q(2)) + &l.scale(&q(2))) + &c(11))).scale(&scale)
}

/// Evaluate an (n, ell, lambda) polynomial at concrete n and ell, leaving a
/// polynomial in lambda.
pub(crate) fn at_n_ell(p: &MPoly<Q>, n: i64, ell: u32) -> UniPoly {
    p.substitute(VAR_N, &MPoly::constant(ARITY, q(n)))
        .substitute(VAR_L, &MPoly::constant(ARITY, q(ell as i64)))
        .to_unipoly(VAR_LAM)
        .expect("only lambda is left after substitution")
}

fn check_index(n: i64) -> Result<(), SeriesError> {
    if n < -1 {
        Err(SeriesError::IndexBelowStart(n))
    } else {
        Ok(())
    }
}

/// Recurrence coefficients (A_n, B_n) of
/// a_{n+2} = A_n a_{n+1} + B_n a_n, with lambda kept symbolic.
pub fn recurrence_coeffs(
    form: FrobeniusForm,
    ell: u32,
    n: i64,
) -> Result<(RatLam, RatLam), SeriesError> {
    check_index(n)?;
    let (pa, pb) = coeff_numerators(form);
    let den = at_n_ell(&coeff_denominator(form), n, ell);
    let a = RatLam::new(at_n_ell(&pa, n, ell), den.clone())?;
    let b = RatLam::new(at_n_ell(&pb, n, ell), den)?;
    Ok((a, b))
}

/// Recurrence coefficients at an exact rational spectral value.
pub fn recurrence_coeffs_at(
    form: FrobeniusForm,
    ell: u32,
    n: i64,
    lambda: &Q,
) -> Result<(Q, Q), SeriesError> {
    check_index(n)?;
    let (pa, pb) = coeff_numerators(form);
    let point = [q(n), q(ell as i64), lambda.clone()];
    let den = coeff_denominator(form).eval(&point);
    Ok((pa.eval(&point) / &den, pb.eval(&point) / &den))
}

/// Recurrence coefficients at an exact point on the imaginary axis (or any
/// Gaussian rational).
pub fn recurrence_coeffs_gaussian(
    form: FrobeniusForm,
    ell: u32,
    n: i64,
    lambda: &GaussianRational,
) -> Result<(GaussianRational, GaussianRational), SeriesError> {
    check_index(n)?;
    let (pa, pb) = coeff_numerators(form);
    let point = [
        GaussianRational::from_real(q(n)),
        GaussianRational::from_real(q(ell as i64)),
        lambda.clone(),
    ];
    let den = coeff_denominator(form).eval_gaussian(&point);
    let a = crate::ratfunc::gdiv(&pa.eval_gaussian(&point), &den)
        .expect("denominator is positive for n >= -1");
    let b = crate::ratfunc::gdiv(&pb.eval_gaussian(&point), &den)
        .expect("denominator is positive for n >= -1");
    Ok((a, b))
}

/// Recurrence coefficients at a complex floating-point spectral value.
pub fn recurrence_coeffs_f64(
    form: FrobeniusForm,
    ell: u32,
    n: i64,
    lambda: Complex64,
) -> Result<(Complex64, Complex64), SeriesError> {
    check_index(n)?;
    let nf = n as f64;
    let lf = ell as f64;
    let la = lambda;
    match form {
        FrobeniusForm::LowEll => {
            let den = 14.0 * (nf + 2.0) * (2.0 * nf + 2.0 * lf + 11.0);
            let pa = 7.0 * la * (la + 9.0)
                + 7.0 * lf * lf
                + lf * (8.0 * nf + 14.0 * la + 103.0)
                + 8.0 * nf * nf
                + 4.0 * (7.0 * la + 34.0) * nf
                - 40.0;
            let base = la + lf + 2.0 * nf;
            let pb = 5.0 * (base - 4.0) * (base - 3.0);
            Ok((pa / den, pb / den))
        }
        FrobeniusForm::HighEll => {
            let den = 24.0 * (nf + 2.0) * (2.0 * nf + 2.0 * lf + 11.0);
            let pa = 68.0 * nf * nf
                + (48.0 * la + 68.0 * lf + 356.0) * nf
                + 7.0 * la * la
                + 17.0 * lf * lf
                + 24.0 * la * lf
                + 128.0 * la
                + 178.0 * lf
                - 15.0;
            let base = la + lf + 2.0 * nf;
            let pb = -5.0 * (base + 11.0) * (base - 3.0);
            Ok((pa / den, pb / den))
        }
    }
}

/// Limits of (A_n, B_n) as n grows, read off from the leading n^2
/// coefficients of the numerators and the denominator.
pub fn asymptotic_coeffs(form: FrobeniusForm) -> (Q, Q) {
    let (pa, pb) = coeff_numerators(form);
    let den = coeff_denominator(form);
    let lead = |p: &MPoly<Q>| {
        let slices = p.coeffs_in(VAR_N);
        slices
            .last()
            .expect("quadratic in n")
            .eval(&[q(0), q(0), q(0)])
    };
    let d = lead(&den);
    (lead(&pa) / &d, lead(&pb) / &d)
}

/// Characteristic polynomial t^2 - A_inf t - B_inf of the recurrence.
pub fn characteristic_polynomial(form: FrobeniusForm) -> UniPoly {
    let (a, b) = asymptotic_coeffs(form);
    UniPoly::from_coeffs(vec![-b, -a, q(1)])
}

/// The two roots of the characteristic polynomial; the first is always 1,
/// the second is -5/7 (low chart) or 5/12 (high chart).
pub fn characteristic_roots(form: FrobeniusForm) -> (Q, Q) {
    match form {
        FrobeniusForm::LowEll => (q(1), qr(-5, 7)),
        FrobeniusForm::HighEll => (q(1), qr(5, 12)),
    }
}
