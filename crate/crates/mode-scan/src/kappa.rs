//! Exact spectrum of the constant-blowup linearization via the
//! hypergeometric connection condition.
//!
//! With V = 12 the mode equation in x = rho^2 (after f = rho^l h(x)) is
//! hypergeometric:
//!
//!   x(1-x) h'' + [c - (a+b+1) x] h' - a b h = 0,
//!   a = (lambda + l - 1)/2,  b = (lambda + l + 6)/2,  c = d/2 + l,
//!
//! since a+b = lambda + l + 5/2 and 4ab = (lambda+l+6)(lambda+l-1) match the
//! coefficients K - 12 = (lambda+l+6)(lambda+l-1). Analyticity of the h
//! branch at x = 1 requires -a or -b to be a nonnegative integer; the -b
//! branch forces re(lambda) <= -6, so on half-planes above -1/2 the point
//! spectrum is exactly {1 - l - 2n : n >= 0}.

use num_complex::Complex64;
use numkit::{gamma, reciprocal_gamma};

use crate::error::ModeScanError;

fn check_dimension(d: u32) -> Result<(), ModeScanError> {
    if d == 7 || d == 9 {
        Ok(())
    } else {
        Err(ModeScanError::UnsupportedDimension { d, need: "d in {7, 9}" })
    }
}

/// Eigenvalues of the constant-potential mode family with re(lambda) >=
/// sigma, exactly.
pub fn kappa_spectrum(d: u32, ell: u32, sigma: f64) -> Result<Vec<i64>, ModeScanError> {
    check_dimension(d)?;
    if sigma < -0.5 {
        return Err(ModeScanError::SigmaBelowHalf { sigma });
    }
    let mut out = Vec::new();
    let mut lam = 1 - ell as i64;
    while lam as f64 >= sigma {
        out.push(lam);
        lam -= 2;
    }
    Ok(out)
}

/// Connection-coefficient sample for the constant-potential family.
#[derive(Debug, Clone, Copy)]
pub struct KappaConnection {
    /// Gamma(c) / (Gamma(a) Gamma(b)): entire in lambda, zero exactly on the
    /// eigenvalue set (the reciprocal-gamma zeros).
    pub value: Complex64,
    /// c - a - b = (d-5)/2 - lambda is a nonpositive integer: the second
    /// local solution at x = 1 degenerates logarithmically and the full
    /// connection formula picks up a pole that cancels in the ratio used
    /// here.
    pub degenerate_log: bool,
    /// Gamma pole in the numerator argument c (cannot happen for d >= 1;
    /// reported instead of panicking).
    pub numerator_pole: bool,
}

pub fn connection_coefficient_kappa(
    d: u32,
    ell: u32,
    lambda: Complex64,
) -> Result<KappaConnection, ModeScanError> {
    check_dimension(d)?;
    let le = ell as f64;
    let a = (lambda + (le - 1.0)) / 2.0;
    let b = (lambda + (le + 6.0)) / 2.0;
    let c = d as f64 / 2.0 + le;

    let cab = Complex64::new(c, 0.0) - a - b;
    let degenerate_log = cab.im.abs() < 1e-9
        && cab.re < 0.5
        && (cab.re - cab.re.round()).abs() < 1e-9;

    if c <= 0.0 && c == c.floor() {
        return Ok(KappaConnection {
            value: Complex64::new(f64::INFINITY, 0.0),
            degenerate_log,
            numerator_pole: true,
        });
    }
    let value = gamma(c) * reciprocal_gamma(a) * reciprocal_gamma(b);
    Ok(KappaConnection { value, degenerate_log, numerator_pole: false })
}
