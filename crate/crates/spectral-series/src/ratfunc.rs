use exact_core::{q_to_f64, ExactError, GaussianRational, Q, UniPoly};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Reduced ratio of two univariate polynomials in the spectral parameter.
///
/// The gcd of numerator and denominator is cancelled and the denominator is
/// kept monic, so two equal rational functions have literally equal parts.
#[derive(Debug, Clone, PartialEq)]
pub struct RatLam {
    num: UniPoly,
    den: UniPoly,
}

impl RatLam {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UniPoly, den: UniPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self { num, den: UniPoly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            let (n, nr) = num.divrem(&g).expect("gcd is nonzero");
            let (d, dr) = den.divrem(&g).expect("gcd is nonzero");
            debug_assert!(nr.is_zero() && dr.is_zero());
            (n, d)
        };
        let lead = den.leading().expect("denominator is nonzero").clone();
        let inv = Q::one() / lead;
        Self { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    /// True when the denominator is the constant 1, i.e. the function is a
    /// polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval_q(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    pub fn eval_gaussian(&self, z: &GaussianRational) -> Option<GaussianRational> {
        gdiv(&self.num.eval_gaussian(z), &self.den.eval_gaussian(z))
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        eval_unipoly_c64(&self.num, z) / eval_unipoly_c64(&self.den, z)
    }
}

/// Exact complex division of Gaussian rationals; `None` when `b = 0`.
pub(crate) fn gdiv(a: &GaussianRational, b: &GaussianRational) -> Option<GaussianRational> {
    let nb = b.norm_sq();
    if nb.is_zero() {
        return None;
    }
    let re = (&a.re * &b.re + &a.im * &b.im) / &nb;
    let im = (&a.im * &b.re - &a.re * &b.im) / &nb;
    Some(GaussianRational::new(re, im))
}

pub(crate) fn eval_unipoly_c64(p: &UniPoly, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in p.coeffs().iter().rev() {
        acc = acc * z + Complex64::new(q_to_f64(c), 0.0);
    }
    acc
}

impl Add for &RatLam {
    type Output = RatLam;
    fn add(self, rhs: Self) -> RatLam {
        RatLam::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatLam {
    type Output = RatLam;
    fn sub(self, rhs: Self) -> RatLam {
        RatLam::reduced(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Mul for &RatLam {
    type Output = RatLam;
    fn mul(self, rhs: Self) -> RatLam {
        RatLam::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatLam {
    type Output = RatLam;
    fn div(self, rhs: Self) -> RatLam {
        assert!(!rhs.num.is_zero(), "division by the zero rational function");
        RatLam::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RatLam {
    type Output = RatLam;
    fn neg(self) -> RatLam {
        RatLam { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatLam {
    type Output = RatLam;
    fn add(self, rhs: Self) -> RatLam {
        &self + &rhs
    }
}

impl Sub for RatLam {
    type Output = RatLam;
    fn sub(self, rhs: Self) -> RatLam {
        &self - &rhs
    }
}

impl Mul for RatLam {
    type Output = RatLam;
    fn mul(self, rhs: Self) -> RatLam {
        &self * &rhs
    }
}

impl Div for RatLam {
    type Output = RatLam;
    fn div(self, rhs: Self) -> RatLam {
        &self / &rhs
    }
}

impl Zero for RatLam {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatLam {
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_core::{q, qr};

    fn lam() -> RatLam {
        RatLam::from_poly(UniPoly::x())
    }

    #[test]
    fn arithmetic_reduces_to_canonical_form() {
        // (lam^2 - 1)/(lam - 1) reduces to lam + 1.
        let num = UniPoly::from_i64(&[-1, 0, 1]);
        let den = UniPoly::from_i64(&[-1, 1]);
        let f = RatLam::new(num, den).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.num(), &UniPoly::from_i64(&[1, 1]));

        // 1/lam + 1/(lam + 1) = (2 lam + 1)/(lam^2 + lam)
        let a = &RatLam::one() / &lam();
        let shifted = &lam() + &RatLam::one();
        let b = &RatLam::one() / &shifted;
        let s = &a + &b;
        assert_eq!(s.num(), &UniPoly::from_i64(&[1, 2]));
        assert_eq!(s.den(), &UniPoly::from_i64(&[0, 1, 1]));
    }

    #[test]
    fn evaluation_matches_exact_division() {
        let f = &lam() / &(&(&lam() * &lam()) + &RatLam::constant(q(3)));
        assert_eq!(f.eval_q(&q(2)).unwrap(), qr(2, 7));
        // Pole detection: denominator lam - 1 vanishes at 1.
        let g = RatLam::new(UniPoly::one(), UniPoly::from_i64(&[-1, 1])).unwrap();
        assert!(g.eval_q(&q(1)).is_none());
        let c = f.eval_c64(Complex64::new(2.0, 0.0));
        assert!((c.re - 2.0 / 7.0).abs() < 1e-15 && c.im.abs() < 1e-15);
    }
}
