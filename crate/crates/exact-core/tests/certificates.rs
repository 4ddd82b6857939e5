use exact_core::{
    certify_nonneg, modulus_square_split, q, qr, routh_hurwitz, sturm_count, GaussianRational,
    MPoly, Q, RootInterval, UniPoly, Verdict,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Build a polynomial from a prescribed root set: real roots and complex
/// conjugate pairs with rational data. The ground-truth stability is known by
/// construction, which makes this an independent oracle for the Routh table.
fn poly_from_roots(reals: &[Q], pairs: &[(Q, Q)]) -> UniPoly {
    let mut p = UniPoly::one();
    for r in reals {
        p = &p * &UniPoly::from_coeffs(vec![-r.clone(), q(1)]);
    }
    for (a, b) in pairs {
        // (x - (a+bi))(x - (a-bi)) = x^2 - 2a x + a^2 + b^2
        let c0 = a * a + b * b;
        p = &p * &UniPoly::from_coeffs(vec![c0, q(-2) * a, q(1)]);
    }
    p
}

#[test]
fn routh_agrees_with_known_root_oracle_on_200_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    // Real parts are kept away from the imaginary axis by at least 1/1000.
    let margin = qr(1, 1000);
    for _ in 0..200 {
        let n_real = rng.gen_range(0..=4);
        let n_pairs = rng.gen_range(0..=2);
        if n_real + 2 * n_pairs == 0 {
            continue;
        }
        let mut reals = Vec::new();
        let mut pairs = Vec::new();
        let mut stable = true;
        for _ in 0..n_real {
            let mag = qr(rng.gen_range(1..2000), rng.gen_range(1..50));
            let sign = if rng.gen_bool(0.7) { -1 } else { 1 };
            let r = &margin * q(sign) + q(sign) * &mag;
            if sign > 0 {
                stable = false;
            }
            reals.push(r);
        }
        for _ in 0..n_pairs {
            let mag = qr(rng.gen_range(1..2000), rng.gen_range(1..50));
            let sign = if rng.gen_bool(0.7) { -1 } else { 1 };
            let a = &margin * q(sign) + q(sign) * &mag;
            let b = qr(rng.gen_range(0..300), rng.gen_range(1..30));
            if sign > 0 {
                stable = false;
            }
            pairs.push((a, b));
        }
        let p = poly_from_roots(&reals, &pairs);
        assert_eq!(
            routh_hurwitz(&p).unwrap(),
            stable,
            "disagreement for roots {reals:?} / {pairs:?}"
        );
    }
}

#[test]
fn modsq_spot_check_value_1600() {
    // Numerator of the n=0 series coefficient at l=0, as a polynomial in
    // (n, lambda): 7 l(l+9) + 8 n^2 + 4(7 l + 34) n - 40.
    let n = MPoly::<Q>::var(2, 0);
    let l = MPoly::<Q>::var(2, 1);
    let p = &(&(&l * &l).scale(&q(7)) + &l.scale(&q(63)))
        + &(&(&(&n * &n).scale(&q(8)) + &(&n * &l).scale(&q(28)))
            + &(&n.scale(&q(136)) + &MPoly::constant(2, q(-40))));
    let split = modulus_square_split(&p, 1);
    assert_eq!(split.eval(&[q(0), q(0)]), q(1600));
}

#[test]
fn certified_pass_implies_nonnegative_float_samples() {
    // (n+1)(s+2) + n^2 s, certified, then sampled on a grid.
    let n = MPoly::<Q>::var(2, 0);
    let s = MPoly::<Q>::var(2, 1);
    let p = &(&(&n + &MPoly::one(2)) * &(&s + &MPoly::constant(2, q(2))))
        + &(&(&n * &n) * &s);
    let report = certify_nonneg(&p, &[0, 0], &["n", "s"]);
    assert!(report.passed());
    for i in 0..50 {
        for j in 0..50 {
            let x = i as f64 * 20.0 / 49.0;
            let y = j as f64 * 100.0 / 49.0;
            assert!(p.eval_f64(&[x, y]) >= -1e-12);
        }
    }
}

#[test]
fn report_serializes_with_schema_fields() {
    let s = MPoly::<Q>::var(1, 0);
    let p = &s + &MPoly::one(1);
    let report = certify_nonneg(&p, &[0], &["s"]);
    let json = serde_json::to_value(&report).unwrap();
    assert!(json.get("verdict").is_some());
    assert!(json.get("tactic").is_some());
    assert!(json.get("shifted-index").is_some());
    assert!(json.get("polynomial").is_some());
    let rows = json["polynomial"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
}

#[test]
fn inconclusive_rather_than_overclaim_on_touching_roots() {
    // s^2 - 2s + 1 = (s-1)^2 is nonnegative but has a distinct root at 1; the
    // conservative Sturm tactic must not claim a violation.
    let s = MPoly::<Q>::var(1, 0);
    let p = &(&s * &s) - &(&s.scale(&q(2)) - &MPoly::one(1));
    let report = certify_nonneg(&p, &[0], &["s"]);
    assert_ne!(report.verdict, Verdict::Fail);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The split evaluated at (n, t^2) equals |P(n, it)|^2 in exact Gaussian
    /// rational arithmetic.
    #[test]
    fn modsq_matches_gaussian_norm(
        coeffs in proptest::collection::vec((-20i64..20, 0u32..4, 0u32..4), 1..8),
        tn in -50i64..50,
        td in 1i64..20,
        nn in -50i64..50,
        nd in 1i64..20,
    ) {
        let mut p = MPoly::<Q>::zero(2);
        for (c, en, el) in coeffs {
            p.add_term(vec![en, el], q(c));
        }
        let split = modulus_square_split(&p, 1);
        let t = qr(tn, td);
        let nv = qr(nn, nd);
        let lhs = split.eval(&[nv.clone(), &t * &t]);
        let z = p.eval_gaussian(&[
            GaussianRational::from_real(nv),
            GaussianRational::imaginary(t),
        ]);
        prop_assert_eq!(lhs, z.norm_sq());
    }

    /// Root counting is invariant under positive scaling.
    #[test]
    fn sturm_invariant_under_positive_scaling(
        coeffs in proptest::collection::vec(-30i64..30, 2..7),
        num in 1i64..500,
        den in 1i64..500,
    ) {
        let p = UniPoly::from_i64(&coeffs);
        prop_assume!(!p.is_zero());
        let scaled = p.scale(&qr(num, den));
        let interval = RootInterval::RayFrom { a: q(0) };
        prop_assert_eq!(
            sturm_count(&p, &interval).unwrap(),
            sturm_count(&scaled, &interval).unwrap()
        );
    }
}
