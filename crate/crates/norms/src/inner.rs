use exact_core::{q, qr, MPoly, Q};
use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::field::{free_generator_apply, laplacian, random_field, PolyField};
use crate::moments::{Domain, MomentTable};
use crate::NormError;

/// Full contraction of the m-th derivative tensors over the domain: the sum
/// over all m-tuples (i_1, ..., i_m) of the integral of
/// d_{i_1}..d_{i_m} u * d_{i_1}..d_{i_m} v,
/// assembled as a multi-index sum with multinomial weights. Branches whose
/// iterated derivative already vanishes are pruned.
fn derivative_contraction(
    table: &mut MomentTable,
    domain: Domain,
    u: &MPoly<Q>,
    v: &MPoly<Q>,
    m: u32,
) -> Q {
    fn factorial(n: u32) -> Q {
        let mut f = q(1);
        for i in 2..=n as i64 {
            f = f * q(i);
        }
        f
    }
    fn rec(
        table: &mut MomentTable,
        domain: Domain,
        du: &MPoly<Q>,
        dv: &MPoly<Q>,
        var: usize,
        remaining: u32,
        weight: Q,
        acc: &mut Q,
    ) {
        if du.is_zero() || dv.is_zero() {
            return;
        }
        let d = du.arity();
        if var + 1 == d {
            let mut a = du.clone();
            let mut b = dv.clone();
            for _ in 0..remaining {
                a = a.derivative(var);
                b = b.derivative(var);
                if a.is_zero() || b.is_zero() {
                    return;
                }
            }
            let integral = table.integrate(domain, &(&a * &b));
            *acc = acc.clone() + weight / factorial(remaining) * integral;
            return;
        }
        let mut a = du.clone();
        let mut b = dv.clone();
        for cnt in 0..=remaining {
            if cnt > 0 {
                a = a.derivative(var);
                b = b.derivative(var);
                if a.is_zero() || b.is_zero() {
                    return;
                }
            }
            rec(
                table,
                domain,
                &a,
                &b,
                var + 1,
                remaining - cnt,
                weight.clone() / factorial(cnt),
                acc,
            );
        }
    }

    let mut acc = Q::zero();
    rec(table, domain, u, v, 0, m, factorial(m), &mut acc);
    acc
}

/// The adapted inner product: boundary traces at orders 0..2 stitched to
/// interior derivative contractions, plus standard homogeneous parts for
/// orders above three. Exact on polynomial pairs, in units of the sphere
/// area. Test data is real, so conjugation is the identity and the form is
/// symmetric.
pub fn hk_inner(
    u: &PolyField,
    v: &PolyField,
    k: u32,
    table: &mut MomentTable,
) -> Result<Q, NormError> {
    if k < 3 {
        return Err(NormError::OrderTooSmall(k));
    }
    let d = table.dim() as usize;
    if u.dim() != d || v.dim() != d {
        return Err(NormError::ArityMismatch {
            expected: d,
            got: if u.dim() != d { u.dim() } else { v.dim() },
        });
    }
    let sph = Domain::Sphere;
    let ball = Domain::Ball;
    let mut total = Q::zero();
    // order 1: surface gradient and both traces
    total = total + derivative_contraction(table, sph, &u.u1, &v.u1, 1);
    total = total + derivative_contraction(table, sph, &u.u1, &v.u1, 0);
    total = total + derivative_contraction(table, sph, &u.u2, &v.u2, 0);
    // order 2: interior third derivatives of u1 via the Laplacian, interior
    // Hessian of u2, surface gradient of u2
    let (lu, lv) = (laplacian(&u.u1), laplacian(&v.u1));
    total = total + derivative_contraction(table, ball, &lu, &lv, 1);
    total = total + derivative_contraction(table, ball, &u.u2, &v.u2, 2);
    total = total + derivative_contraction(table, sph, &u.u2, &v.u2, 1);
    // order 3, weighted by 4
    let mut third = derivative_contraction(table, ball, &u.u1, &v.u1, 3);
    third = third + derivative_contraction(table, ball, &u.u2, &v.u2, 2);
    third = third + derivative_contraction(table, sph, &u.u1, &v.u1, 2);
    total = total + q(4) * third;
    // orders 4..k: standard homogeneous interior parts
    for j in 4..=k {
        total = total + derivative_contraction(table, ball, &u.u1, &v.u1, j);
        total = total + derivative_contraction(table, ball, &u.u2, &v.u2, j - 1);
    }
    Ok(total)
}

pub fn hk_norm_sq(u: &PolyField, k: u32, table: &mut MomentTable) -> Result<Q, NormError> {
    hk_inner(u, u, k, table)
}

/// Standard Sobolev pair norm: all interior derivative contractions of
/// orders 0..k for the first component and 0..k-1 for the second.
pub fn standard_norm_sq(u: &PolyField, k: u32, table: &mut MomentTable) -> Result<Q, NormError> {
    let d = table.dim() as usize;
    if u.dim() != d {
        return Err(NormError::ArityMismatch {
            expected: d,
            got: u.dim(),
        });
    }
    let mut total = Q::zero();
    for m in 0..=k {
        total = total + derivative_contraction(table, Domain::Ball, &u.u1, &u.u1, m);
    }
    for m in 0..k {
        total = total + derivative_contraction(table, Domain::Ball, &u.u2, &u.u2, m);
    }
    Ok(total)
}

#[derive(Debug, Clone)]
pub struct GapReport {
    /// Re(generator u | u) + c_d ||u||^2; the dissipation estimate asserts
    /// this is never positive.
    pub gap: Q,
    pub norm_sq: Q,
    /// Set when k is outside the hand-verified range 3..=5.
    pub exploratory: bool,
}

/// Exact dissipativity margin of the free generator on a polynomial pair,
/// with the established damping constants: 1/2 in dimension 9, 3/2 in
/// dimension 7.
pub fn dissipativity_gap(
    u: &PolyField,
    k: u32,
    table: &mut MomentTable,
) -> Result<GapReport, NormError> {
    let c = match table.dim() {
        9 => qr(1, 2),
        7 => qr(3, 2),
        d => return Err(NormError::DimensionUnsupported(d)),
    };
    let lu = free_generator_apply(u);
    let re = hk_inner(&lu, u, k, table)?;
    let norm_sq = hk_norm_sq(u, k, table)?;
    Ok(GapReport {
        gap: re + c * norm_sq.clone(),
        norm_sq,
        exploratory: k > 5,
    })
}

/// Ratio of the adapted norm to the standard Sobolev norm (both squared).
pub fn norm_equivalence_probe(
    u: &PolyField,
    k: u32,
    table: &mut MomentTable,
) -> Result<Q, NormError> {
    if u.is_zero() {
        return Err(NormError::ZeroField);
    }
    let a = hk_norm_sq(u, k, table)?;
    let b = standard_norm_sq(u, k, table)?;
    Ok(a / b)
}

#[derive(Debug, Clone)]
pub struct CorpusReport {
    pub fields: usize,
    pub max_gap: Q,
    pub ratio_min: Q,
    pub ratio_max: Q,
    /// Indices of corpus fields with a positive gap (expected empty).
    pub failures: Vec<usize>,
}

/// Run the dissipativity and norm-equivalence checks over a deterministic
/// random corpus. Each field is seeded independently, so the corpus is
/// reproducible and embarrassingly parallel.
pub fn dissipativity_corpus(
    d: u32,
    k: u32,
    count: usize,
    max_degree: u32,
    seed: u64,
) -> Result<CorpusReport, NormError> {
    let count = count.max(1);
    let results: Result<Vec<(usize, Q, Q)>, NormError> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9)));
            let mut table = MomentTable::new(d)?;
            let mut field = random_field(d as usize, max_degree, &mut rng);
            while field.is_zero() {
                field = random_field(d as usize, max_degree, &mut rng);
            }
            let gap = dissipativity_gap(&field, k, &mut table)?.gap;
            let ratio = norm_equivalence_probe(&field, k, &mut table)?;
            Ok((i, gap, ratio))
        })
        .collect();
    let results = results?;
    let mut max_gap: Option<Q> = None;
    let mut ratio_min: Option<Q> = None;
    let mut ratio_max: Option<Q> = None;
    let mut failures = Vec::new();
    for (i, gap, ratio) in results {
        if gap > Q::zero() {
            failures.push(i);
        }
        max_gap = Some(match max_gap {
            Some(m) => m.max(gap),
            None => gap,
        });
        ratio_min = Some(match ratio_min {
            Some(m) => m.min(ratio.clone()),
            None => ratio.clone(),
        });
        ratio_max = Some(match ratio_max {
            Some(m) => m.max(ratio),
            None => ratio,
        });
    }
    Ok(CorpusReport {
        fields: count,
        max_gap: max_gap.unwrap(),
        ratio_min: ratio_min.unwrap(),
        ratio_max: ratio_max.unwrap(),
        failures,
    })
}
