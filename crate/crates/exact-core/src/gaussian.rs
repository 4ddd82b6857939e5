use crate::Q;
use num_traits::{One, Zero};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Complex number with exact rational real and imaginary parts. Used to
/// evaluate polynomials on the imaginary axis without floating-point error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Q,
    pub im: Q,
}

impl GaussianRational {
    pub fn new(re: Q, im: Q) -> Self {
        Self { re, im }
    }

    pub fn from_real(re: Q) -> Self {
        Self { re, im: Q::zero() }
    }

    /// Purely imaginary value `i t`.
    pub fn imaginary(t: Q) -> Self {
        Self { re: Q::zero(), im: t }
    }

    /// `|z|^2 = re^2 + im^2`, exact.
    pub fn norm_sq(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::from_real(Q::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_real(Q::one())
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl AddAssign for GaussianRational {
    fn add_assign(&mut self, rhs: Self) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self { re, im }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qr;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::imaginary(Q::one());
        let sq = i.clone() * i;
        assert_eq!(sq, GaussianRational::from_real(-Q::one()));
    }

    #[test]
    fn norm_sq_matches_product_with_conjugate() {
        let z = GaussianRational::new(qr(3, 2), qr(-1, 5));
        assert_eq!(z.norm_sq(), qr(9, 4) + qr(1, 25));
    }
}
