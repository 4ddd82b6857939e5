//! Polynomial form of the mode equation in the variable x = rho^2.
//!
//! Writing f = rho^l h(rho^2) removes the centrifugal term exactly and turns
//! the radial equation into
//!
//!   4x(1-x) h'' + [(2d+4l) - (4 lambda + 4l + 14) x] h' + [V(x) - K] h = 0,
//!   K = (lambda+2)(lambda+3) + l(l-1) + 2(lambda+3) l,
//!
//! which, after multiplying through by the potential denominator D(x)
//! (V = N/D), has polynomial coefficients of degree at most four. Frobenius
//! indices: {0, -(d-2+2l)/2} at x = 0 and {0, (d-5)/2 - lambda} at x = 1,
//! for every potential tag (the indices at 1 only see D(1) and the first
//! derivative terms).

use exact_core::{q, q_to_f64};
use num_complex::Complex64;
use profiles::profile_constants;

use crate::error::ModeScanError;
use crate::types::{PotentialTag, SpectralPoint};

pub(crate) type CPoly = Vec<Complex64>;

/// p2 y'' + p1 y' + p0 y = 0 with polynomial coefficients in the expansion
/// variable (x near zero, w = 1 - x near one).
#[derive(Debug, Clone)]
pub(crate) struct OdePolys {
    pub p2: CPoly,
    pub p1: CPoly,
    pub p0: CPoly,
}

/// Numerator and denominator of the potential, as exactly representable f64
/// polynomials. For dimensions with rational profile constants both are
/// scaled to integer coefficients (common denominator 75), so the integer
/// arithmetic feeding the resonance cancellations stays exact in f64.
pub(crate) fn potential_fraction(
    d: u32,
    tag: PotentialTag,
) -> Result<(Vec<f64>, Vec<f64>), ModeScanError> {
    match tag {
        PotentialTag::Free => Ok((vec![0.0], vec![1.0])),
        PotentialTag::ConstantTwelve => Ok((vec![12.0], vec![1.0])),
        PotentialTag::UStar => {
            let pc = profile_constants(d)?;
            if let Some(ex) = &pc.exact {
                let s = q(75);
                let s2 = &s * &s;
                let a = q_to_f64(&(&s * &ex.c3)); // 75 c3, an integer
                let n0 = q_to_f64(&(&s2 * &(q(2) * &ex.c1)));
                let n1 = -q_to_f64(&(&s2 * &(q(2) * &ex.c2)));
                debug_assert!(a.fract() == 0.0 && n0.fract() == 0.0 && n1.fract() == 0.0);
                Ok((vec![n0, n1], vec![a * a, 2.0 * a * 75.0, 75.0 * 75.0]))
            } else {
                let (c1, c2, c3) = (pc.c1, pc.c2, pc.c3);
                Ok((vec![2.0 * c1, -2.0 * c2], vec![c3 * c3, 2.0 * c3, 1.0]))
            }
        }
    }
}

fn to_cpoly(p: &[f64]) -> CPoly {
    p.iter().map(|&c| Complex64::new(c, 0.0)).collect()
}

pub(crate) fn cpoly_mul(a: &[Complex64], b: &[Complex64]) -> CPoly {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Coefficients of p(a + b w) as a polynomial in w (Horner in poly space).
pub(crate) fn cpoly_affine(p: &[Complex64], a: Complex64, b: Complex64) -> CPoly {
    let mut out: CPoly = vec![*p.last().expect("nonempty poly")];
    for &c in p.iter().rev().skip(1) {
        // out <- out * (a + b w) + c
        let mut next = vec![Complex64::new(0.0, 0.0); out.len() + 1];
        for (k, &ok) in out.iter().enumerate() {
            next[k] += ok * a;
            next[k + 1] += ok * b;
        }
        next[0] += c;
        out = next;
    }
    out
}

#[cfg(test)]
pub(crate) fn cpoly_eval(p: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Mode equation around x = 0.
pub(crate) fn ode_in_x(p: &SpectralPoint) -> Result<OdePolys, ModeScanError> {
    let (num, den) = potential_fraction(p.d, p.potential)?;
    let num = to_cpoly(&num);
    let den = to_cpoly(&den);
    let lam = p.lambda;
    let le = p.ell as f64;
    let dd = p.d as f64;

    let kconst = (lam + 2.0) * (lam + 3.0) + le * (le - 1.0) + (lam + 3.0) * (2.0 * le);
    // 4x(1-x) and the first-order bracket, before the D(x) factor.
    let quad = vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(4.0, 0.0),
        Complex64::new(-4.0, 0.0),
    ];
    let lin = vec![
        Complex64::new(2.0 * dd + 4.0 * le, 0.0),
        -(4.0 * lam + Complex64::new(4.0 * le + 14.0, 0.0)),
    ];

    let p2 = cpoly_mul(&quad, &den);
    let p1 = cpoly_mul(&lin, &den);
    let mut p0 = vec![Complex64::new(0.0, 0.0); den.len().max(num.len())];
    for (k, &c) in num.iter().enumerate() {
        p0[k] += c;
    }
    for (k, &c) in den.iter().enumerate() {
        p0[k] -= kconst * c;
    }
    Ok(OdePolys { p2, p1, p0 })
}

/// Same equation written in w = 1 - x (so w = 0 is the light cone). The
/// sign flip on p1 absorbs dx = -dw.
pub(crate) fn ode_at_one(ode_x: &OdePolys) -> OdePolys {
    let one = Complex64::new(1.0, 0.0);
    let neg = Complex64::new(-1.0, 0.0);
    let p1 = cpoly_affine(&ode_x.p1, one, neg).iter().map(|c| -c).collect();
    OdePolys {
        p2: cpoly_affine(&ode_x.p2, one, neg),
        p1,
        p0: cpoly_affine(&ode_x.p0, one, neg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{PotentialTag, SpectralPoint};
    use num_complex::Complex64;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn u_star_fraction_is_integer_scaled() {
        let (n, d) = potential_fraction(9, PotentialTag::UStar).unwrap();
        // 75^2 * 2 * (336/5 - 48/5 x) and (105 + 75 x)^2.
        assert_eq!(n, vec![756000.0, -108000.0]);
        assert_eq!(d, vec![11025.0, 15750.0, 5625.0]);

        let (n7, d7) = potential_fraction(7, PotentialTag::UStar).unwrap();
        assert_eq!(n7, vec![226800.0, -54000.0]);
        assert_eq!(d7, vec![2025.0, 6750.0, 5625.0]);
    }

    /// Residual of p2 h'' + p1 h' + p0 h at a sample point, relative to the
    /// largest of the three terms.
    fn rel_residual(ode: &OdePolys, x: f64, h: f64, hp: f64, hpp: f64) -> f64 {
        let z = re(x);
        let t2 = cpoly_eval(&ode.p2, z) * hpp;
        let t1 = cpoly_eval(&ode.p1, z) * hp;
        let t0 = cpoly_eval(&ode.p0, z) * h;
        let scale = t2.norm().max(t1.norm()).max(t0.norm()).max(1e-300);
        (t2 + t1 + t0).norm() / scale
    }

    #[test]
    fn known_mode_solutions_satisfy_the_equation() {
        // (l, lambda, h, h', h'') with h built from (7+5x) powers.
        let cases: Vec<(u32, f64, Box<dyn Fn(f64) -> (f64, f64, f64)>)> = vec![
            // l = 0, lambda = 3: h = (7+5x)^-3.
            (
                0,
                3.0,
                Box::new(|x| {
                    let b = 7.0 + 5.0 * x;
                    (b.powi(-3), -15.0 * b.powi(-4), 300.0 * b.powi(-5))
                }),
            ),
            // l = 0, lambda = 1: h = (1-x)(7+5x)^-3.
            (
                0,
                1.0,
                Box::new(|x| {
                    let b = 7.0 + 5.0 * x;
                    let h = (1.0 - x) * b.powi(-3);
                    let hp = -b.powi(-3) - 15.0 * (1.0 - x) * b.powi(-4);
                    let hpp = 30.0 * b.powi(-4) + 300.0 * (1.0 - x) * b.powi(-5);
                    (h, hp, hpp)
                }),
            ),
            // l = 1, lambda = 1: h = (77-5x)(7+5x)^-3.
            (
                1,
                1.0,
                Box::new(|x| {
                    let b = 7.0 + 5.0 * x;
                    let h = (77.0 - 5.0 * x) * b.powi(-3);
                    let hp = (50.0 * x - 1190.0) * b.powi(-4);
                    let hpp = (24150.0 - 750.0 * x) * b.powi(-5);
                    (h, hp, hpp)
                }),
            ),
            // l = 1, lambda = 0: h = (7-3x)(7+5x)^-3.
            (
                1,
                0.0,
                Box::new(|x| {
                    let b = 7.0 + 5.0 * x;
                    let h = (7.0 - 3.0 * x) * b.powi(-3);
                    let hp = -3.0 * b.powi(-3) - 15.0 * (7.0 - 3.0 * x) * b.powi(-4);
                    let hpp = 90.0 * b.powi(-4) + 300.0 * (7.0 - 3.0 * x) * b.powi(-5);
                    (h, hp, hpp)
                }),
            ),
        ];
        for (ell, lam, h) in cases {
            let p = SpectralPoint::u_star(9, ell, re(lam));
            let ode = ode_in_x(&p).unwrap();
            for &x in &[0.05, 0.3, 0.55, 0.8, 0.97] {
                let (hv, hp, hpp) = h(x);
                let r = rel_residual(&ode, x, hv, hp, hpp);
                assert!(r < 1e-12, "l={ell} lambda={lam} x={x}: residual {r:.3e}");
            }
        }
    }

    #[test]
    fn constant_potential_eigenfunction_is_constant() {
        // V = 12, l = 0, lambda = 1: K = 12, so h = 1 solves the equation.
        let p = SpectralPoint::new(9, 0, re(1.0), PotentialTag::ConstantTwelve);
        let ode = ode_in_x(&p).unwrap();
        for &x in &[0.1, 0.5, 0.9] {
            assert!(cpoly_eval(&ode.p0, re(x)).norm() < 1e-13);
        }
    }

    #[test]
    fn indices_at_one_are_zero_and_shifted_lambda() {
        let lam = Complex64::new(0.3, 0.2);
        for (d, ell) in [(9u32, 0u32), (9, 4), (7, 1)] {
            let p = SpectralPoint::u_star(d, ell, lam);
            let flipped = ode_at_one(&ode_in_x(&p).unwrap());
            let a1 = flipped.p2[1];
            let b0 = flipped.p1[0];
            // I(sigma) = A1 sigma(sigma-1) + B0 sigma vanishes at the second
            // index sigma = (d-5)/2 - lambda.
            let sigma = Complex64::new((d as f64 - 5.0) / 2.0, 0.0) - lam;
            let val = a1 * sigma * (sigma - 1.0) + b0 * sigma;
            let scale = a1.norm() * sigma.norm() * (sigma.norm() + 1.0);
            assert!(val.norm() <= 1e-12 * scale, "d={d} l={ell}: {:.3e}", val.norm());
            assert!(flipped.p2[0].norm() < 1e-12 * a1.norm());
        }
    }
}
