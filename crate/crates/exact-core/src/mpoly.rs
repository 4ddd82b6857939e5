use crate::error::ExactError;
use crate::{GaussianRational, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Coefficient ring for sparse polynomials.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + AddAssign
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + AddAssign
{
}

/// Sparse multivariate polynomial with a fixed number of variables.
///
/// Invariants: no stored zero coefficients; every exponent vector has length
/// equal to the arity. Terms are kept in a `BTreeMap` so iteration order, and
/// hence serialization, is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly<C> {
    arity: usize,
    terms: BTreeMap<Vec<u32>, C>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(arity: usize) -> Self {
        Self { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: C) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity], c);
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, C::one())
    }

    /// The monomial `x_index`.
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable index out of range");
        let mut exps = vec![0; arity];
        exps[index] = 1;
        let mut p = Self::zero(arity);
        p.add_term(exps, C::one());
        p
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    /// Accumulate a term, dropping it if the sum cancels to zero.
    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        assert_eq!(exps.len(), self.arity, "exponent arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        let mut out = Self::zero(self.arity);
        for (e, k) in &self.terms {
            out.add_term(e.clone(), k.clone() * c.clone());
        }
        out
    }

    /// Degree in one variable (0 for the zero polynomial).
    pub fn degree(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn active_vars(&self) -> Vec<usize> {
        (0..self.arity).filter(|&v| self.degree(v) > 0).collect()
    }

    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.arity);
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut k = C::zero();
            for _ in 0..e[var] {
                k += C::one();
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c.clone() * k);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.arity);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                out = &out * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        out
    }

    /// Substitute a polynomial for one variable. The replacement must have the
    /// same arity; the substituted variable may occur in it (e.g. shifts).
    pub fn substitute(&self, var: usize, replacement: &Self) -> Self {
        assert!(var < self.arity);
        assert_eq!(replacement.arity, self.arity);
        // Group by the power of `var`, then Horner in the replacement.
        let max_pow = self.degree(var);
        let mut slices: Vec<Self> = vec![Self::zero(self.arity); max_pow as usize + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            slices[k].add_term(e2, c.clone());
        }
        let mut out = Self::zero(self.arity);
        for slice in slices.into_iter().rev() {
            out = &(&out * replacement) + &slice;
        }
        out
    }

    /// Substitute `var -> var + offset` where `offset` is a constant.
    pub fn shift_var(&self, var: usize, offset: C) -> Self {
        let repl = {
            let mut p = Self::var(self.arity, var);
            p.add_term(vec![0; self.arity], offset);
            p
        };
        self.substitute(var, &repl)
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.arity);
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term * point[v].clone();
                }
            }
            acc += term;
        }
        acc
    }

    /// View as a univariate polynomial in `var`: coefficient polynomials in
    /// the remaining variables, index = power of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Self> {
        assert!(var < self.arity);
        let mut out = vec![Self::zero(self.arity); self.degree(var) as usize + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].add_term(e2, c.clone());
        }
        out
    }
}

impl MPoly<Q> {
    /// Strictly univariate view in `var`; errors if any other variable occurs.
    pub fn to_unipoly(&self, var: usize) -> Result<crate::UniPoly, ExactError> {
        if var >= self.arity {
            return Err(ExactError::VariableOutOfRange { index: var, arity: self.arity });
        }
        let active = self.active_vars();
        if active.iter().any(|&v| v != var) {
            return Err(ExactError::NotUnivariate { active: active.len() });
        }
        let mut coeffs = vec![Q::zero(); self.degree(var) as usize + 1];
        for (e, c) in &self.terms {
            coeffs[e[var] as usize] = c.clone();
        }
        Ok(crate::UniPoly::from_coeffs(coeffs))
    }

    /// Evaluate with exact complex rational arguments.
    pub fn eval_gaussian(&self, point: &[GaussianRational]) -> GaussianRational {
        assert_eq!(point.len(), self.arity);
        let mut acc = GaussianRational::zero();
        for (e, c) in &self.terms {
            let mut term = GaussianRational::from_real(c.clone());
            for (v, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term * point[v].clone();
                }
            }
            acc += term;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.arity);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut term = crate::q_to_f64(c);
            for (v, &k) in e.iter().enumerate() {
                term *= point[v].powi(k as i32);
            }
            acc += term;
        }
        acc
    }

    /// Sparse serialization: `[exponents..., numerator, denominator]` with the
    /// big integers rendered as decimal strings.
    pub fn to_sparse_strings(&self) -> Vec<(Vec<u32>, String, String)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.clone(), c.numer().to_string(), c.denom().to_string()))
            .collect()
    }

    /// Largest coefficient size in bits, a cost diagnostic for reports.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

impl<C: Coeff> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: Self) -> MPoly<C> {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: Self) -> MPoly<C> {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: Self) -> MPoly<C> {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = MPoly::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        let mut out = MPoly::zero(self.arity);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl fmt::Display for MPoly<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["n", "s", "l", "t", "u", "v", "w"];
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    let name = names.get(v).copied().unwrap_or("x");
                    write!(f, "*{}{}^{}", name, v, k)?;
                }
            }
        }
        Ok(())
    }
}

/// `Q(n, t^2) = |P(n, i t)|^2` with `s` standing for `t^2`.
///
/// The input is read as a polynomial in the variable `lambda_var`; on output
/// the same slot holds `s`. Writing `P(n, it) = A(n, t^2) + i t B(n, t^2)`,
/// the result is `A^2 + s B^2`, which is nonnegative for `s >= 0` by
/// construction.
pub fn modulus_square_split(p: &MPoly<Q>, lambda_var: usize) -> MPoly<Q> {
    assert!(lambda_var < p.arity());
    let arity = p.arity();
    let mut even = MPoly::zero(arity); // A(n, s)
    let mut odd = MPoly::zero(arity); // B(n, s)
    for (e, c) in p.terms() {
        let k = e[lambda_var];
        // (i t)^k = i^k t^k; split by parity of k and fold t^2 -> s.
        let half = k / 2;
        let sign_flip = match k % 4 {
            0 | 1 => false,
            2 | 3 => true,
            _ => unreachable!(),
        };
        let coeff = if sign_flip { -c.clone() } else { c.clone() };
        let mut e2 = e.clone();
        e2[lambda_var] = half;
        if k % 2 == 0 {
            even.add_term(e2, coeff);
        } else {
            odd.add_term(e2, coeff);
        }
    }
    let s = MPoly::var(arity, lambda_var);
    &(&even * &even) + &(&(&odd * &odd) * &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qr};

    fn nl(arity: usize) -> (MPoly<Q>, MPoly<Q>) {
        (MPoly::var(arity, 0), MPoly::var(arity, 1))
    }

    #[test]
    fn arithmetic_and_substitution() {
        let (n, l) = nl(2);
        // p = (n + l)^2 = n^2 + 2nl + l^2
        let p = (&n + &l).pow(2);
        assert_eq!(p.coeff(&[1, 1]), q(2));
        assert_eq!(p.coeff(&[2, 0]), q(1));
        // shift n -> n + 3: (n + 3 + l)^2 at n=0, l=0 gives 9
        let shifted = p.shift_var(0, q(3));
        assert_eq!(shifted.eval(&[q(0), q(0)]), q(9));
        // composition against direct evaluation
        assert_eq!(p.eval(&[q(4), q(-1)]), q(9));
    }

    #[test]
    fn derivative_and_coeffs_in() {
        let (n, l) = nl(2);
        let p = &(&n * &n) * &l; // n^2 l
        let dp = p.derivative(0);
        assert_eq!(dp.coeff(&[1, 1]), q(2));
        let slices = p.coeffs_in(1);
        assert_eq!(slices.len(), 2);
        assert!(slices[0].is_zero());
        assert_eq!(slices[1].coeff(&[2, 0]), q(1));
    }

    #[test]
    fn modsq_split_trivial_cases() {
        // P = lambda -> s
        let p = MPoly::<Q>::var(2, 1);
        let s = modulus_square_split(&p, 1);
        assert_eq!(s, MPoly::var(2, 1));
        // P = lambda + 1 -> s + 1
        let p1 = &p + &MPoly::one(2);
        let q1 = modulus_square_split(&p1, 1);
        let expect = &MPoly::var(2, 1) + &MPoly::one(2);
        assert_eq!(q1, expect);
    }

    #[test]
    fn modsq_spot_value_from_recurrence_numerator() {
        // P = 7 l (l + 9) + 8 n^2 + 4 (7 l + 34) n - 40 over (n, lambda)
        let (n, l) = nl(2);
        let p = &(&(&l * &l).scale(&q(7)) + &l.scale(&q(63)))
            + &(&(&(&n * &n).scale(&q(8)) + &(&n * &l).scale(&q(28)))
                + &(&n.scale(&q(136)) + &MPoly::constant(2, q(-40))));
        let qq = modulus_square_split(&p, 1);
        assert_eq!(qq.eval(&[q(0), q(0)]), q(1600));
    }

    #[test]
    fn modsq_matches_gaussian_evaluation() {
        let (n, l) = nl(2);
        let l3 = &(&l * &l) * &l;
        let p = &(&(&n * &l).scale(&qr(3, 2)) + &l3.scale(&q(-2))) + &MPoly::constant(2, q(5));
        let qq = modulus_square_split(&p, 1);
        let t = qr(7, 3);
        let nv = qr(-2, 5);
        let lhs = qq.eval(&[nv.clone(), &t * &t]);
        let z = p.eval_gaussian(&[
            GaussianRational::from_real(nv),
            GaussianRational::imaginary(t),
        ]);
        assert_eq!(lhs, z.norm_sq());
    }
}
