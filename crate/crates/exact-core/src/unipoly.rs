use crate::error::ExactError;
use crate::{GaussianRational, Q};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial over the rationals. Coefficient `i` multiplies
/// `x^i`; the vector carries no trailing zeros, and the zero polynomial is the
/// empty vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Q::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| crate::q(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![Q::zero(), Q::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::q_to_f64(c);
        }
        acc
    }

    pub fn eval_gaussian(&self, z: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + GaussianRational::from_real(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Q::from_integer(k.into()))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|k| k * c).collect() }
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divrem(&self, rhs: &Self) -> Result<(Self, Self), ExactError> {
        let d = rhs.degree().ok_or(ExactError::DivisionByZero)?;
        let lead = rhs.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let factor = rem.leading().unwrap() / &lead;
            let shift = rd - d;
            quot[shift] = factor.clone();
            let mut coeffs = rem.coeffs;
            for (k, c) in rhs.coeffs.iter().enumerate() {
                let idx = k + shift;
                coeffs[idx] = &coeffs[idx] - &(c * &factor);
            }
            rem = Self::from_coeffs(coeffs);
        }
        Ok((Self::from_coeffs(quot), rem))
    }

    /// Monic gcd via the Euclidean algorithm with content stripping to keep
    /// coefficients small.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.primitive_like();
        let mut b = rhs.primitive_like();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive_like();
        }
        if let Some(lead) = a.leading() {
            let inv = Q::one() / lead;
            a.scale(&inv)
        } else {
            a
        }
    }

    /// Divide out the integer content and normalize the sign of the leading
    /// coefficient to be positive. Root set is unchanged.
    fn primitive_like(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lead) => {
                // Scale by 1/|lead| for a cheap normalization over Q.
                let inv = Q::one() / lead.abs();
                self.scale(&inv)
            }
        }
    }

    /// `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() || self.degree() == Some(0) {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (q, r) = self.divrem(&g).expect("gcd divides");
        debug_assert!(r.is_zero());
        q
    }

    /// Sturm chain of the squarefree part.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let p = self.squarefree_part();
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let m = chain.len();
            if chain[m - 1].is_zero() {
                chain.pop();
                break;
            }
            let (_, r) = chain[m - 2].divrem(&chain[m - 1]).unwrap();
            if r.is_zero() {
                break;
            }
            chain.push((&r).neg().primitive_like());
        }
        chain
    }

    /// Sign of `p(x)`: -1, 0, or 1.
    pub fn sign_at(&self, x: &Q) -> i32 {
        let v = self.eval(x);
        match v.cmp(&Q::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Sign as x -> +infinity.
    pub fn sign_at_pos_inf(&self) -> i32 {
        match self.leading() {
            None => 0,
            Some(c) => {
                if c.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Sign as x -> -infinity.
    pub fn sign_at_neg_inf(&self) -> i32 {
        match self.degree() {
            None => 0,
            Some(d) => {
                let s = self.sign_at_pos_inf();
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_halfopen(&self, a: &Q, b: &Q) -> Result<usize, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        if a >= b {
            return Ok(0);
        }
        let chain = self.sturm_chain();
        let va = sign_variations(chain.iter().map(|p| p.sign_at(a)));
        let vb = sign_variations(chain.iter().map(|p| p.sign_at(b)));
        Ok(va.saturating_sub(vb))
    }

    /// Number of distinct real roots in `[a, +infinity)`.
    pub fn count_roots_ray(&self, a: &Q) -> Result<usize, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let chain = self.sturm_chain();
        let va = sign_variations(chain.iter().map(|p| p.sign_at(a)));
        let vinf = sign_variations(chain.iter().map(|p| p.sign_at_pos_inf()));
        let open = va.saturating_sub(vinf);
        let at_a = usize::from(self.sign_at(a) == 0);
        Ok(open + at_a)
    }

    /// Cauchy bound: all real roots lie in `[-M, M]`.
    pub fn root_bound(&self) -> Q {
        match self.leading() {
            None => Q::one(),
            Some(lead) => {
                let max = self
                    .coeffs
                    .iter()
                    .map(|c| (c / lead).abs())
                    .fold(Q::zero(), |a, b| if a > b { a } else { b });
                max + Q::one()
            }
        }
    }

    /// Smallest real root `>= a`, isolated by Sturm bisection. Returns the
    /// exact root when bisection lands on it, otherwise a rational enclosure
    /// midpoint within `width`.
    pub fn smallest_root_ge(&self, a: &Q, width: &Q) -> Option<Q> {
        if self.count_roots_ray(a).ok()? == 0 {
            return None;
        }
        if self.sign_at(a) == 0 {
            return Some(a.clone());
        }
        let sf = self.squarefree_part();
        let mut lo = a.clone();
        let mut hi = sf.root_bound();
        if &hi <= a {
            hi = a + Q::one();
        }
        // Keep the leftmost root inside (lo, hi].
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / crate::q(2);
            if sf.sign_at(&mid) == 0 {
                return Some(mid);
            }
            if sf.count_roots_halfopen(&lo, &mid).ok()? > 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some((&lo + &hi) / crate::q(2))
    }
}

fn sign_variations<I: Iterator<Item = i32>>(signs: I) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: Self) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: Self) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: Self) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qr};

    #[test]
    fn divrem_reconstructs() {
        let p = UniPoly::from_i64(&[2, 0, -3, 1, 4]);
        let d = UniPoly::from_i64(&[1, 1, 2]);
        let (quot, rem) = p.divrem(&d).unwrap();
        let back = &(&quot * &d) + &rem;
        assert_eq!(back, p);
        assert!(rem.degree() < d.degree());
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x+2) and (x-1)(x-5) share x-1
        let a = UniPoly::from_i64(&[-2, 1, 1]);
        let b = UniPoly::from_i64(&[5, -6, 1]);
        let g = a.gcd(&b);
        assert_eq!(g, UniPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn sturm_counts_match_known_roots() {
        // (x-1)(x-2)(x+3): roots 1, 2, -3
        let p = &(&UniPoly::from_i64(&[-1, 1]) * &UniPoly::from_i64(&[-2, 1]))
            * &UniPoly::from_i64(&[3, 1]);
        assert_eq!(p.count_roots_halfopen(&q(0), &q(10)).unwrap(), 2);
        assert_eq!(p.count_roots_halfopen(&q(1), &q(2)).unwrap(), 1); // (1, 2] holds the root 2
        assert_eq!(p.count_roots_ray(&q(0)).unwrap(), 2);
        assert_eq!(p.count_roots_ray(&q(1)).unwrap(), 2); // ray is closed at 1
        assert_eq!(p.count_roots_ray(&q(-10)).unwrap(), 3);
    }

    #[test]
    fn repeated_roots_are_counted_once() {
        // (x-1)^2 (x+4)
        let p = &(&UniPoly::from_i64(&[-1, 1]) * &UniPoly::from_i64(&[-1, 1]))
            * &UniPoly::from_i64(&[4, 1]);
        assert_eq!(p.count_roots_ray(&q(0)).unwrap(), 1);
    }

    #[test]
    fn smallest_root_found_exactly_for_rational_root() {
        let p = UniPoly::from_i64(&[-1, 1]); // x - 1
        let r = p.smallest_root_ge(&q(0), &qr(1, 1_000_000)).unwrap();
        assert_eq!(r, q(1));
    }

    #[test]
    fn empty_interval_counts_zero() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(p.count_roots_halfopen(&q(5), &q(3)).unwrap(), 0);
    }
}
