//! Rational-function calculus in the chart (s, g, p) with
//!   s = |xi|^2,  g = gamma(xi, a) = A_0 - A.xi,  p = d_{a_j} gamma = P_0 - P.xi.
//!
//! Both g and p are affine in xi and s is the squared radius, so every
//! first/second-order differential operator acting on a function F(s, g, p)
//! reduces, via the chain rule, to the contraction table
//!   grad s . grad s = 4s          xi . grad s = 2s     (xi xi : hess s) = 2s
//!   grad g . grad g = |A|^2       xi . grad g = g - A_0
//!   grad p . grad p = |P|^2       xi . grad p = p - P_0
//!   grad s . grad g = 2(g - A_0)
//!   grad s . grad p = 2(p - P_0)
//!   grad g . grad p = A . P
//!   lap s = 2d, lap g = lap p = 0, hessians of g and p vanish.
//! With these, PDE residuals of the closed-form families become polynomial
//! identities: exact over Q for rational boosts, float otherwise.

use exact_core::{q, q_to_f64, Coeff, MPoly, Q};

use crate::BoostKernel;

/// Coefficient scalars usable in the chart: exact rationals or floats.
pub trait ChartScalar: Coeff + std::fmt::Debug {
    fn from_i64(n: i64) -> Self;
    fn div(self, rhs: &Self) -> Self;
    fn to_f64(&self) -> f64;
}

impl ChartScalar for Q {
    fn from_i64(n: i64) -> Self {
        q(n)
    }
    fn div(self, rhs: &Self) -> Self {
        self / rhs
    }
    fn to_f64(&self) -> f64 {
        q_to_f64(self)
    }
}

impl ChartScalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn div(self, rhs: &Self) -> Self {
        self / rhs
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

pub const VAR_S: usize = 0;
pub const VAR_G: usize = 1;
pub const VAR_P: usize = 2;
const ARITY: usize = 3;

/// Rational function num / base^pow over the chart variables. All functions
/// attached to one family share the same base polynomial, so sums, products
/// and derivatives never leave this representation.
#[derive(Debug, Clone, PartialEq)]
pub struct PowFrac<C: ChartScalar> {
    pub num: MPoly<C>,
    pub base: MPoly<C>,
    pub pow: u32,
}

impl<C: ChartScalar> PowFrac<C> {
    pub fn poly(num: MPoly<C>, base: MPoly<C>) -> Self {
        Self { num, base, pow: 0 }
    }

    pub fn new(num: MPoly<C>, base: MPoly<C>, pow: u32) -> Self {
        Self { num, base, pow }
    }

    pub fn constant(c: C, base: MPoly<C>) -> Self {
        Self::poly(MPoly::constant(ARITY, c), base)
    }

    pub fn var(v: usize, base: MPoly<C>) -> Self {
        Self::poly(MPoly::var(ARITY, v), base)
    }

    pub fn is_zero_fn(&self) -> bool {
        self.num.is_zero()
    }

    fn same_base(&self, other: &Self) -> bool {
        self.base == other.base
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.same_base(other), "mismatched chart bases");
        let k = self.pow.max(other.pow);
        let a = &self.num * &self.base.pow(k - self.pow);
        let b = &other.num * &other.base.pow(k - other.pow);
        Self::new(&a + &b, self.base.clone(), k)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.num, self.base.clone(), self.pow)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.same_base(other), "mismatched chart bases");
        Self::new(&self.num * &other.num, self.base.clone(), self.pow + other.pow)
    }

    pub fn mul_poly(&self, p: &MPoly<C>) -> Self {
        Self::new(&self.num * p, self.base.clone(), self.pow)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.num.scale(c), self.base.clone(), self.pow)
    }

    /// Partial derivative with respect to chart variable v.
    pub fn partial(&self, v: usize) -> Self {
        if self.pow == 0 {
            return Self::poly(self.num.derivative(v), self.base.clone());
        }
        let k = C::from_i64(self.pow as i64);
        let num = &(&self.num.derivative(v) * &self.base)
            - &(&self.num * &self.base.derivative(v)).scale(&k);
        Self::new(num, self.base.clone(), self.pow + 1)
    }

    pub fn eval(&self, s: C, g: C, p: C) -> C {
        let pt = [s, g, p];
        let n = self.num.eval(&pt);
        if self.pow == 0 {
            return n;
        }
        let mut b = self.base.eval(&pt);
        let b1 = b.clone();
        for _ in 1..self.pow {
            b = b * b1.clone();
        }
        n.div(&b)
    }
}

impl PowFrac<Q> {
    pub fn eval_f64(&self, s: f64, g: f64, p: f64) -> f64 {
        let pt = [s, g, p];
        self.num.eval_f64(&pt) / self.base.eval_f64(&pt).powi(self.pow as i32)
    }

    pub fn to_f64(&self) -> PowFrac<f64> {
        let conv = |m: &MPoly<Q>| {
            let mut out = MPoly::zero(ARITY);
            for (e, c) in m.terms() {
                out.add_term(e.clone(), q_to_f64(c));
            }
            out
        };
        PowFrac::new(conv(&self.num), conv(&self.base), self.pow)
    }
}

/// Contraction constants of the chart for one boost and one
/// differentiation direction j (the direction only matters for p).
#[derive(Debug, Clone)]
pub struct ChartConsts<C: ChartScalar> {
    pub dim: i64,
    pub a0: C,
    pub p0: C,
    /// |A|^2 = A_0^2 - 1
    pub gg: C,
    /// |P|^2
    pub pp: C,
    /// A . P
    pub gp: C,
}

impl ChartConsts<Q> {
    /// Contraction constants from the boost's rational layer.
    pub fn from_boost_exact(b: &BoostKernel, j: usize) -> Self {
        let e = &b.exact;
        let pvec = &e.davec[j];
        let dot = |u: &[Q], v: &[Q]| {
            u.iter()
                .zip(v)
                .fold(num::Zero::zero(), |acc: Q, (x, y)| acc + x * y)
        };
        Self {
            dim: b.dim() as i64,
            a0: e.a0.clone(),
            p0: e.da0[j].clone(),
            gg: dot(&e.avec, &e.avec),
            pp: dot(pvec, pvec),
            gp: dot(&e.avec, pvec),
        }
    }
}

impl<C: ChartScalar> ChartConsts<C> {
    /// Chart point (s, g, p) for a concrete xi, in floats.
    pub fn point_f64(b: &BoostKernel, j: usize, xi: &[f64]) -> (f64, f64, f64) {
        let s = xi.iter().map(|x| x * x).sum();
        (s, b.gamma(xi), b.d_gamma(j, xi))
    }

    fn c(&self, n: i64, base: &MPoly<C>) -> PowFrac<C> {
        PowFrac::constant(C::from_i64(n), base.clone())
    }

    /// Affine polynomial alpha * var + beta as a chart function.
    fn affine(&self, var: usize, alpha: i64, beta: C, base: &MPoly<C>) -> PowFrac<C> {
        let mut m = MPoly::var(ARITY, var).scale(&C::from_i64(alpha));
        m.add_term(vec![0; ARITY], beta);
        PowFrac::poly(m, base.clone())
    }

    /// xi . grad F = 2s F_s + (g - A_0) F_g + (p - P_0) F_p
    pub fn xi_grad(&self, f: &PowFrac<C>) -> PowFrac<C> {
        let base = &f.base;
        let zero = C::from_i64(0);
        let t1 = self
            .affine(VAR_S, 2, zero, base)
            .mul(&f.partial(VAR_S));
        let t2 = self
            .affine(VAR_G, 1, -self.a0.clone(), base)
            .mul(&f.partial(VAR_G));
        let t3 = self
            .affine(VAR_P, 1, -self.p0.clone(), base)
            .mul(&f.partial(VAR_P));
        t1.add(&t2).add(&t3)
    }

    /// Laplacian via the contraction table.
    pub fn laplacian(&self, f: &PowFrac<C>) -> PowFrac<C> {
        let base = &f.base;
        let fs = f.partial(VAR_S);
        let fg = f.partial(VAR_G);
        let fp = f.partial(VAR_P);
        let mut acc = self
            .affine(VAR_S, 4, C::from_i64(0), base)
            .mul(&fs.partial(VAR_S));
        acc = acc.add(&fg.partial(VAR_G).scale(&self.gg));
        acc = acc.add(&fp.partial(VAR_P).scale(&self.pp));
        // cross terms carry the factor 2 from the symmetric Hessian
        let sg = self.affine(VAR_G, 4, -self.a0.clone() * C::from_i64(4), base);
        acc = acc.add(&sg.mul(&fs.partial(VAR_G)));
        let sp = self.affine(VAR_P, 4, -self.p0.clone() * C::from_i64(4), base);
        acc = acc.add(&sp.mul(&fs.partial(VAR_P)));
        acc = acc.add(&fg.partial(VAR_P).scale(&(self.gp.clone() + self.gp.clone())));
        acc = acc.add(&fs.scale(&C::from_i64(2 * self.dim)));
        acc
    }

    /// xi^i xi^j d_i d_j F via the contraction table.
    pub fn xixi_hessian(&self, f: &PowFrac<C>) -> PowFrac<C> {
        let base = &f.base;
        let xs = self.affine(VAR_S, 2, C::from_i64(0), base);
        let xg = self.affine(VAR_G, 1, -self.a0.clone(), base);
        let xp = self.affine(VAR_P, 1, -self.p0.clone(), base);
        let fs = f.partial(VAR_S);
        let fg = f.partial(VAR_G);
        let fp = f.partial(VAR_P);
        let mut acc = xs.mul(&xs).mul(&fs.partial(VAR_S));
        acc = acc.add(&xg.mul(&xg).mul(&fg.partial(VAR_G)));
        acc = acc.add(&xp.mul(&xp).mul(&fp.partial(VAR_P)));
        let two = self.c(2, base);
        acc = acc.add(&two.mul(&xs).mul(&xg).mul(&fs.partial(VAR_G)));
        acc = acc.add(&two.mul(&xs).mul(&xp).mul(&fs.partial(VAR_P)));
        acc = acc.add(&two.mul(&xg).mul(&xp).mul(&fg.partial(VAR_P)));
        // hess s = 2 I, hessians of g and p vanish
        acc.add(&xs.mul(&fs))
    }

    /// Residual of the similarity-profile equation
    ///   lap F - (xi xi : hess F) - 6 xi.grad F - 6 F + F^2 = 0,
    /// satisfied by every member of the blowup families.
    pub fn stationary_residual(&self, f: &PowFrac<C>) -> PowFrac<C> {
        let lin = self
            .laplacian(f)
            .sub(&self.xixi_hessian(f))
            .sub(&self.xi_grad(f).scale(&C::from_i64(6)))
            .sub(&f.scale(&C::from_i64(6)));
        lin.add(&f.mul(f))
    }

    /// The linearized similarity flow applied to a two-component field:
    ///   (L u)_1 = -xi.grad u1 - 2 u1 + u2
    ///   (L u)_2 = lap u1 - xi.grad u2 - 3 u2 + V u1
    /// where V is twice the underlying profile.
    pub fn linearized_apply(
        &self,
        v: &PowFrac<C>,
        u1: &PowFrac<C>,
        u2: &PowFrac<C>,
    ) -> (PowFrac<C>, PowFrac<C>) {
        let l1 = self
            .xi_grad(u1)
            .neg()
            .sub(&u1.scale(&C::from_i64(2)))
            .add(u2);
        let l2 = self
            .laplacian(u1)
            .sub(&self.xi_grad(u2))
            .sub(&u2.scale(&C::from_i64(3)))
            .add(&v.mul(u1));
        (l1, l2)
    }
}
