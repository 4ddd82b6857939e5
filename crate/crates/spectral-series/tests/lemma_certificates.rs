//! End-to-end runs of the contraction-lemma certificate chains.

use exact_core::{qr, Verdict};
use spectral_series::{certify_lemma, envelope_values, epsilon_c_on_axis, EllClass};

#[test]
fn all_three_class_certificates_pass() {
    for (class, start, bound) in [
        (EllClass::Zero, 6, "1/5"),
        (EllClass::One, 5, "1/5"),
        (EllClass::GeTwo, 3, "1/3"),
    ] {
        let cert = certify_lemma(class).unwrap();
        assert_eq!(cert.start_index, start, "class {class:?}");
        assert_eq!(cert.contraction_bound, bound, "class {class:?}");
        for check in &cert.checks {
            assert_eq!(
                check.verdict,
                Verdict::Pass,
                "class {class:?}, check {}: {}",
                check.name,
                check.detail
            );
        }
        assert_eq!(cert.verdict, Verdict::Pass, "class {class:?}");
    }
}

#[test]
fn ge_two_certificate_is_uniform_in_ell() {
    // The bivariate certificates close for all ell >= 2 at once; the per-ell
    // fallback list stays empty.
    let cert = certify_lemma(EllClass::GeTwo).unwrap();
    assert_eq!(cert.verdict, Verdict::Pass);
    assert!(cert.per_ell_fallback.is_none());
}

#[test]
fn certificates_serialize_deterministically() {
    let a = serde_json::to_string(&certify_lemma(EllClass::Zero).unwrap()).unwrap();
    let b = serde_json::to_string(&certify_lemma(EllClass::Zero).unwrap()).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"verdict\":\"pass\""));
}

/// Exact grid refinement of the axis-bound certificates: the squared moduli
/// of the update factors stay below the squared envelopes at every sampled
/// index and axis point, with exact rational comparisons.
#[test]
fn envelopes_dominate_on_a_dense_exact_grid() {
    let ts = [qr(0, 1), qr(1, 2), qr(1, 1), qr(3, 1), qr(17, 2), qr(40, 1), qr(1000, 1)];
    for (class, ells) in [
        (EllClass::Zero, vec![0u32]),
        (EllClass::One, vec![1]),
        (EllClass::GeTwo, vec![2, 3, 7, 19]),
    ] {
        let start = class.start_index();
        for ell in ells {
            for k in 0..8 {
                let n = start + 3 * k;
                let (env_e, env_c) = envelope_values(class, n);
                for t in &ts {
                    let (e2, c2) = epsilon_c_on_axis(class, ell, n, t).unwrap();
                    assert!(
                        e2 <= &env_e * &env_e,
                        "eps bound: class {class:?}, ell {ell}, n {n}, t {t}"
                    );
                    assert!(
                        c2 <= &env_c * &env_c,
                        "C bound: class {class:?}, ell {ell}, n {n}, t {t}"
                    );
                }
            }
        }
    }
}
