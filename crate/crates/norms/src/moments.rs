use std::collections::HashMap;

use exact_core::{q, MPoly, Q};
use num::Zero;

use crate::NormError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Ball,
    Sphere,
}

/// Exact monomial moment in units of the sphere area: the integral of
/// xi^alpha over the unit ball, or of omega^alpha over the unit sphere,
/// divided by |S^{d-1}|.
///
/// The moment vanishes unless every exponent is even. For alpha = 2 beta the
/// sphere value is prod_i (2 beta_i - 1)!! / prod_{j<|beta|} (d + 2j); the
/// ball value carries the extra radial factor 1 / (d + |alpha|).
pub fn monomial_moment(domain: Domain, d: u32, alpha: &[u32]) -> Result<Q, NormError> {
    if d < 2 {
        return Err(NormError::DimensionTooSmall(d));
    }
    let sphere = sphere_moment(d, alpha);
    Ok(match domain {
        Domain::Sphere => sphere,
        Domain::Ball => {
            let total: u32 = alpha.iter().sum();
            sphere / q((d + total) as i64)
        }
    })
}

fn sphere_moment(d: u32, alpha: &[u32]) -> Q {
    if alpha.iter().any(|&a| a % 2 == 1) {
        return q(0);
    }
    let mut num = q(1);
    let mut half_total: u32 = 0;
    for &a in alpha {
        let b = a / 2;
        half_total += b;
        let mut m = 1;
        while m < a {
            num = num * q(m as i64);
            m += 2;
        }
    }
    let mut den = q(1);
    for j in 0..half_total {
        den = den * q((d + 2 * j) as i64);
    }
    num / den
}

/// Cache of normalized moments for a fixed dimension. Only even-exponent
/// sphere moments are stored; odd moments are exactly zero and ball moments
/// differ by a rational radial factor.
#[derive(Debug, Clone)]
pub struct MomentTable {
    d: u32,
    cache: HashMap<Vec<u32>, Q>,
}

impl MomentTable {
    pub fn new(d: u32) -> Result<Self, NormError> {
        if d < 2 {
            return Err(NormError::DimensionTooSmall(d));
        }
        Ok(Self {
            d,
            cache: HashMap::new(),
        })
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn moment(&mut self, domain: Domain, alpha: &[u32]) -> Q {
        if alpha.iter().any(|&a| a % 2 == 1) {
            return q(0);
        }
        let d = self.d;
        let sphere = self
            .cache
            .entry(alpha.to_vec())
            .or_insert_with(|| sphere_moment(d, alpha))
            .clone();
        match domain {
            Domain::Sphere => sphere,
            Domain::Ball => {
                let total: u32 = alpha.iter().sum();
                sphere / q((d + total) as i64)
            }
        }
    }

    /// Exact integral of a polynomial over the domain, in units of the
    /// sphere area.
    pub fn integrate(&mut self, domain: Domain, p: &MPoly<Q>) -> Q {
        let mut acc = Q::zero();
        for (exps, c) in p.terms() {
            let m = self.moment(domain, exps);
            if !m.is_zero() {
                acc = acc + c.clone() * m;
            }
        }
        acc
    }
}
