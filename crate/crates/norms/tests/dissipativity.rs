//! Corpus-level checks: the dissipation inequality and norm equivalence on
//! hundreds of random polynomial pairs, decided in exact arithmetic.

use exact_core::{q, qr, MPoly, Q};
use norms::{
    dissipativity_corpus, dissipativity_gap, hk_inner, random_field, Domain, MomentTable,
    PolyField,
};
use num::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn gap_is_nonpositive_on_five_hundred_fields() {
    let report = dissipativity_corpus(9, 5, 500, 6, 42).unwrap();
    assert!(report.failures.is_empty(), "failures: {:?}", report.failures);
    assert!(report.max_gap <= Q::zero(), "max gap {}", report.max_gap);
    assert!(report.ratio_min >= qr(1, 1000));
    assert!(report.ratio_max <= q(1000));
    assert_eq!(report.fields, 500);
}

#[test]
fn stronger_damping_holds_in_dimension_seven() {
    let report = dissipativity_corpus(7, 5, 150, 6, 7).unwrap();
    assert!(report.failures.is_empty(), "failures: {:?}", report.failures);
    assert!(report.max_gap <= Q::zero(), "max gap {}", report.max_gap);
    assert!(report.ratio_min >= qr(1, 1000));
    assert!(report.ratio_max <= q(1000));
}

#[test]
fn higher_order_gap_is_flagged_exploratory_but_still_nonpositive() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut table = MomentTable::new(9).unwrap();
    for _ in 0..10 {
        let u = random_field(9, 4, &mut rng);
        let report = dissipativity_gap(&u, 6, &mut table).unwrap();
        assert!(report.exploratory);
        assert!(report.gap <= Q::zero(), "gap {}", report.gap);
    }
}

fn seeded_field(seed: u64, d: usize, deg: u32) -> PolyField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_field(d, deg, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// The form is symmetric on real polynomial data.
    #[test]
    fn inner_product_is_symmetric(a in any::<u64>(), b in any::<u64>(), k in 3u32..6) {
        let u = seeded_field(a, 9, 5);
        let v = seeded_field(b, 9, 5);
        let mut t = MomentTable::new(9).unwrap();
        prop_assert_eq!(
            hk_inner(&u, &v, k, &mut t).unwrap(),
            hk_inner(&v, &u, k, &mut t).unwrap()
        );
    }

    /// 2 xi . grad f * f = div(xi f^2) - d f^2 pointwise on polynomials,
    /// hence also after integration against the moment table.
    #[test]
    fn radial_derivative_identity_integrates_exactly(a in any::<u64>()) {
        let d = 9usize;
        let f = seeded_field(a, d, 5).u1;
        let mut lhs = MPoly::zero(d);
        let mut div = MPoly::zero(d);
        let f2 = &f * &f;
        for j in 0..d {
            lhs = &lhs + &(&(&MPoly::var(d, j) * &f.derivative(j)) * &f).scale(&q(2));
            div = &div + &(&MPoly::var(d, j) * &f2).derivative(j);
        }
        let rhs = &div - &f2.scale(&q(d as i64));
        prop_assert_eq!(&lhs, &rhs);
        let mut t = MomentTable::new(d as u32).unwrap();
        prop_assert_eq!(
            t.integrate(Domain::Ball, &lhs),
            t.integrate(Domain::Ball, &rhs)
        );
    }
}
