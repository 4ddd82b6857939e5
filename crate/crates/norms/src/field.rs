use exact_core::{q, qr, MPoly, Q};
use rand::Rng;

use crate::NormError;

/// A pair (u1, u2) of real polynomials on the ball, the test surface for the
/// energy-space estimates: polynomials are dense and integrate exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyField {
    pub u1: MPoly<Q>,
    pub u2: MPoly<Q>,
}

impl PolyField {
    pub fn new(u1: MPoly<Q>, u2: MPoly<Q>) -> Result<Self, NormError> {
        if u1.arity() != u2.arity() {
            return Err(NormError::ArityMismatch {
                expected: u1.arity(),
                got: u2.arity(),
            });
        }
        Ok(Self { u1, u2 })
    }

    pub fn zero(d: usize) -> Self {
        Self {
            u1: MPoly::zero(d),
            u2: MPoly::zero(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.u1.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.u1.is_zero() && self.u2.is_zero()
    }
}

pub(crate) fn xi_dot_grad(p: &MPoly<Q>) -> MPoly<Q> {
    let d = p.arity();
    let mut acc = MPoly::zero(d);
    for i in 0..d {
        acc = &acc + &(&MPoly::var(d, i) * &p.derivative(i));
    }
    acc
}

pub(crate) fn laplacian(p: &MPoly<Q>) -> MPoly<Q> {
    let d = p.arity();
    let mut acc = MPoly::zero(d);
    for i in 0..d {
        acc = &acc + &p.derivative(i).derivative(i);
    }
    acc
}

/// The potential-free part of the linearized similarity-flow generator:
/// (u1, u2) -> (-xi . grad u1 - 2 u1 + u2, lap u1 - xi . grad u2 - 3 u2).
/// Maps polynomial pairs to polynomial pairs.
pub fn free_generator_apply(u: &PolyField) -> PolyField {
    let v1 = &(&u.u2 - &xi_dot_grad(&u.u1)) - &u.u1.scale(&q(2));
    let v2 = &(&laplacian(&u.u1) - &xi_dot_grad(&u.u2)) - &u.u2.scale(&q(3));
    PolyField { u1: v1, u2: v2 }
}

/// Sparse random polynomial pair with small rational coefficients; both
/// components have total degree at most `max_degree`.
pub fn random_field<R: Rng>(d: usize, max_degree: u32, rng: &mut R) -> PolyField {
    let mut component = |deg_cap: u32| {
        let mut p = MPoly::zero(d);
        let terms = rng.gen_range(4..=12);
        for _ in 0..terms {
            let total = rng.gen_range(0..=deg_cap);
            let mut exps = vec![0u32; d];
            for _ in 0..total {
                exps[rng.gen_range(0..d)] += 1;
            }
            let num = loop {
                let n = rng.gen_range(-9i64..=9);
                if n != 0 {
                    break n;
                }
            };
            let den = rng.gen_range(1i64..=4);
            p.add_term(exps, qr(num, den));
        }
        p
    };
    PolyField {
        u1: component(max_degree),
        u2: component(max_degree),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_on_simple_pairs() {
        // (1, 0) -> (-2, 0) and (0, 1) -> (1, -3)
        let d = 9;
        let one = MPoly::one(d);
        let zero = MPoly::zero(d);
        let a = free_generator_apply(&PolyField::new(one.clone(), zero.clone()).unwrap());
        assert_eq!(a.u1, one.scale(&q(-2)));
        assert!(a.u2.is_zero());
        let b = free_generator_apply(&PolyField::new(zero, one.clone()).unwrap());
        assert_eq!(b.u1, one.clone());
        assert_eq!(b.u2, one.scale(&q(-3)));
    }

    #[test]
    fn generator_on_linear_first_component() {
        // (xi_1, 0) -> (-3 xi_1, 0): xi . grad xi_1 = xi_1 and lap xi_1 = 0
        let d = 9;
        let x1 = MPoly::var(d, 0);
        let out = free_generator_apply(&PolyField::new(x1.clone(), MPoly::zero(d)).unwrap());
        assert_eq!(out.u1, x1.scale(&q(-3)));
        assert!(out.u2.is_zero());
    }

    #[test]
    fn mismatched_arity_is_rejected() {
        assert!(PolyField::new(MPoly::zero(9), MPoly::zero(7)).is_err());
    }

    #[test]
    fn random_fields_respect_the_degree_cap() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let f = random_field(9, 6, &mut rng);
            assert!(f.u1.total_degree() <= 6);
            assert!(f.u2.total_degree() <= 6);
            assert_eq!(f.dim(), 9);
        }
    }
}
