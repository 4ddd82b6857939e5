use crate::error::ExactError;
use crate::{q, qr, MPoly, Q, UniPoly};
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::time::Instant;

/// Interval for exact root counting.
#[derive(Debug, Clone)]
pub enum RootInterval {
    /// Half-open `(a, b]`.
    HalfOpen { a: Q, b: Q },
    /// Closed ray `[a, +infinity)`.
    RayFrom { a: Q },
}

/// Exact count of distinct real roots of `p` in the interval. The squarefree
/// reduction is performed internally; an empty interval yields 0.
pub fn sturm_count(p: &UniPoly, interval: &RootInterval) -> Result<usize, ExactError> {
    match interval {
        RootInterval::HalfOpen { a, b } => p.count_roots_halfopen(a, b),
        RootInterval::RayFrom { a } => p.count_roots_ray(a),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Which argument closed (or failed) a nonnegativity certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tactic {
    /// Every coefficient of the shifted expansion is nonnegative.
    CoefficientNonnegativity,
    /// Univariate input: Sturm root counting on the half-line.
    SturmOnHalfline,
    /// Multivariate input: for one variable, every sectional coefficient
    /// polynomial is certified on the half-line by Sturm counting.
    SectionedSturmOnHalfline,
}

#[derive(Debug, Clone, Serialize)]
pub struct OffendingMonomial {
    pub exponents: Vec<u32>,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootWitness {
    /// Variable the root lives in (index into `variables`).
    pub variable: usize,
    /// Rational enclosure midpoint (exact when the root itself is rational).
    pub numerator: String,
    pub denominator: String,
    pub approx: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactStats {
    pub terms: usize,
    pub max_coeff_bits: u64,
    pub elapsed_ms: u128,
}

/// Outcome of a polynomial nonnegativity certificate. A pass verdict carries
/// the fully expanded shifted polynomial so the certificate is reproducible
/// from the report alone.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateReport {
    pub verdict: Verdict,
    pub tactic: Option<Tactic>,
    #[serde(rename = "shifted-index")]
    pub shifted_index: Vec<u32>,
    pub variables: Vec<String>,
    /// Sparse `[exponents, numerator, denominator]` rows of the certificate
    /// polynomial (after the index shift).
    pub polynomial: Vec<(Vec<u32>, String, String)>,
    pub offending: Vec<OffendingMonomial>,
    #[serde(rename = "root-witnesses")]
    pub root_witnesses: Vec<RootWitness>,
    pub stats: ExactStats,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

const WITNESS_WIDTH_DEN: i64 = 1_000_000_000;

/// Certify `p >= 0` on the product of half-lines `x_i >= shift_i`.
///
/// The variables are first shifted by the given nonnegative integers, reducing
/// the claim to nonnegativity on the positive orthant. Tactics, in order:
/// all-coefficients-nonnegative; for univariate input, Sturm root counting on
/// `[0, inf)`; otherwise sectioning in each variable with Sturm certificates
/// for every coefficient polynomial. The report records which tactic closed
/// the bound, or witnesses for the failure.
pub fn certify_nonneg(p: &MPoly<Q>, shift: &[u32], variables: &[&str]) -> CertificateReport {
    let started = Instant::now();
    assert_eq!(shift.len(), p.arity(), "one shift per variable");
    assert_eq!(variables.len(), p.arity(), "one name per variable");

    let mut shifted = p.clone();
    for (v, &s) in shift.iter().enumerate() {
        if s > 0 {
            shifted = shifted.shift_var(v, q(s as i64));
        }
    }

    let polynomial = shifted.to_sparse_strings();
    let stats = |elapsed: std::time::Duration| ExactStats {
        terms: shifted.num_terms(),
        max_coeff_bits: shifted.max_coeff_bits(),
        elapsed_ms: elapsed.as_millis(),
    };
    let base = |verdict, tactic, offending, root_witnesses, elapsed| CertificateReport {
        verdict,
        tactic,
        shifted_index: shift.to_vec(),
        variables: variables.iter().map(|s| s.to_string()).collect(),
        polynomial: polynomial.clone(),
        offending,
        root_witnesses,
        stats: stats(elapsed),
    };

    // Tactic 1: manifest nonnegativity of the shifted expansion.
    let negative: Vec<OffendingMonomial> = shifted
        .terms()
        .filter(|(_, c)| c.is_negative())
        .map(|(e, c)| OffendingMonomial {
            exponents: e.clone(),
            numerator: c.numer().to_string(),
            denominator: c.denom().to_string(),
        })
        .collect();
    if negative.is_empty() {
        return base(
            Verdict::Pass,
            Some(Tactic::CoefficientNonnegativity),
            vec![],
            vec![],
            started.elapsed(),
        );
    }

    // Tactic 2: univariate Sturm on the half-line.
    let active = shifted.active_vars();
    if active.len() == 1 {
        let var = active[0];
        let uni = shifted.to_unipoly(var).expect("single active variable");
        match halfline_nonneg(&uni) {
            HalflineOutcome::Nonneg => {
                return base(
                    Verdict::Pass,
                    Some(Tactic::SturmOnHalfline),
                    vec![],
                    vec![],
                    started.elapsed(),
                );
            }
            HalflineOutcome::Violated(root) => {
                let witness = root_witness(var, &root);
                return base(
                    Verdict::Fail,
                    Some(Tactic::SturmOnHalfline),
                    negative,
                    vec![witness],
                    started.elapsed(),
                );
            }
            HalflineOutcome::Unsure => {
                return base(Verdict::Inconclusive, None, negative, vec![], started.elapsed());
            }
        }
    }

    // Tactic 3: section along each variable in turn; all coefficient
    // polynomials must be certified univariate-nonnegative on the half-line.
    for &var in &active {
        if let Some(result) = sectioned_certificate(&shifted, var) {
            match result {
                Ok(()) => {
                    return base(
                        Verdict::Pass,
                        Some(Tactic::SectionedSturmOnHalfline),
                        vec![],
                        vec![],
                        started.elapsed(),
                    );
                }
                Err(root) => {
                    // This section variable fails; record the witness only if
                    // no later variable certifies, so keep trying first.
                    let _ = root;
                }
            }
        }
    }

    // Nothing closed the bound: report a genuine violation if we can find a
    // point, otherwise an honest failure with the offending monomials.
    let witnesses = search_violation(&shifted);
    let verdict = if witnesses.is_empty() { Verdict::Inconclusive } else { Verdict::Fail };
    base(verdict, None, negative, witnesses, started.elapsed())
}

enum HalflineOutcome {
    Nonneg,
    Violated(Q),
    Unsure,
}

/// Decide `u >= 0` on `[0, inf)` for univariate `u`: no roots of the
/// squarefree part in `(0, inf)`, a nonnegative value at 0, and a positive
/// leading coefficient together suffice. A sign change yields a root witness.
fn halfline_nonneg(u: &UniPoly) -> HalflineOutcome {
    if u.is_zero() {
        return HalflineOutcome::Nonneg;
    }
    let at_zero = u.sign_at(&q(0));
    if at_zero < 0 {
        // Already negative at the endpoint; witness the crossing out of the
        // violating region when there is one.
        let witness =
            u.smallest_root_ge(&q(0), &qr(1, WITNESS_WIDTH_DEN)).unwrap_or_else(|| q(0));
        return HalflineOutcome::Violated(witness);
    }
    let interior = u
        .count_roots_ray(&q(0))
        .expect("nonzero polynomial")
        .saturating_sub(usize::from(at_zero == 0));
    if interior == 0 {
        if u.sign_at_pos_inf() > 0 {
            return HalflineOutcome::Nonneg;
        }
        // Negative leading coefficient with no interior roots means u < 0
        // away from the origin.
        let witness = u.root_bound() + q(1);
        return HalflineOutcome::Violated(witness);
    }
    // Interior roots exist. If the polynomial dips negative, isolate the
    // smallest root as the witness; even-multiplicity touching roots keep the
    // certificate honest but conservative.
    match u.smallest_root_ge(&q(0), &qr(1, WITNESS_WIDTH_DEN)) {
        Some(root) => {
            // Check the sign just past the root to distinguish a touch from a
            // crossing; a crossing is a definite violation.
            let probe = &root + qr(1, 1000);
            if u.sign_at(&probe) < 0 || u.sign_at(&q(0)) < 0 {
                HalflineOutcome::Violated(root)
            } else {
                // Could still be nonnegative (touching root); report unsure
                // rather than overclaim.
                HalflineOutcome::Unsure
            }
        }
        None => HalflineOutcome::Unsure,
    }
}

fn sectioned_certificate(p: &MPoly<Q>, var: usize) -> Option<Result<(), Q>> {
    // Collect coefficients of the remaining monomials as univariate
    // polynomials in `var`. All must be nonnegative on the half-line.
    let mut sections: std::collections::BTreeMap<Vec<u32>, Vec<Q>> = Default::default();
    for (e, c) in p.terms() {
        let k = e[var] as usize;
        let mut key = e.clone();
        key[var] = 0;
        let entry = sections.entry(key).or_default();
        if entry.len() <= k {
            entry.resize(k + 1, Q::zero());
        }
        entry[k] = c.clone();
    }
    for coeffs in sections.values() {
        let u = UniPoly::from_coeffs(coeffs.clone());
        match halfline_nonneg(&u) {
            HalflineOutcome::Nonneg => continue,
            HalflineOutcome::Violated(root) => return Some(Err(root)),
            HalflineOutcome::Unsure => return None,
        }
    }
    Some(Ok(()))
}

fn root_witness(var: usize, root: &Q) -> RootWitness {
    RootWitness {
        variable: var,
        numerator: root.numer().to_string(),
        denominator: root.denom().to_string(),
        approx: crate::q_to_f64(root),
    }
}

/// Coarse exact search for a violating point on a small rational grid.
fn search_violation(p: &MPoly<Q>) -> Vec<RootWitness> {
    let arity = p.arity();
    let probes: Vec<Q> = [q(0), qr(1, 2), q(1), q(2), q(5), q(20)].to_vec();
    let mut idx = vec![0usize; arity];
    loop {
        let point: Vec<Q> = idx.iter().map(|&i| probes[i].clone()).collect();
        if p.eval(&point).is_negative() {
            return point
                .iter()
                .enumerate()
                .map(|(v, x)| root_witness(v, x))
                .collect();
        }
        // Odometer increment.
        let mut carry = true;
        for slot in idx.iter_mut() {
            if !carry {
                break;
            }
            *slot += 1;
            if *slot == probes.len() {
                *slot = 0;
            } else {
                carry = false;
            }
        }
        if carry {
            return vec![];
        }
    }
}
