//! End-to-end checks for the profile family: exact residual identities under
//! boosts, Lorentz-map consistency, homogeneity exponents, and positivity.

use exact_core::{q, qr};
use numkit::GaussLegendre;
use profiles::{
    eigen_residual, eval_profile, pde_residual, positivity_on_ball, profile_constants,
    BlowupFamily, BoostKernel, EigenField, FamilyKind, ModeLabel, PositivityVerdict, ProfileError,
};
use proptest::prelude::*;

fn rational_boost() -> BoostKernel {
    // tanh(a_j / 2) values; all cosh/sinh entries stay rational.
    let t = vec![
        qr(1, 8),
        qr(-1, 9),
        q(0),
        qr(1, 10),
        q(0),
        q(0),
        qr(-1, 12),
        q(0),
        qr(2, 9),
    ];
    BoostKernel::from_half_tangents(&t)
}

fn float_boost() -> BoostKernel {
    BoostKernel::from_rapidities(&[0.1, -0.05, 0.2, 0.0, 0.0, 0.15, 0.0, 0.08, 0.0])
}

#[test]
fn boosted_profile_solves_pde_exactly() {
    let family = BlowupFamily::u_star(9, 1.0, vec![0.0; 9], rational_boost()).unwrap();
    assert!(family.is_exact());
    let xi = [0.3, -0.2, 0.05, 0.0, 0.1, 0.0, 0.0, -0.4, 0.2];
    let mut x = vec![0.0; 9];
    for (xi_i, x_i) in xi.iter().zip(x.iter_mut()) {
        *x_i = 0.4 * xi_i;
    }
    let res = pde_residual(&family, 0.6, &x).unwrap();
    assert!(res.exactly_zero);
    assert_eq!(res.value, 0.0);
}

#[test]
fn boosted_kappa_solves_pde_exactly() {
    let family = BlowupFamily::ode_kappa(9, 2.0, vec![0.1; 9], rational_boost()).unwrap();
    assert!(family.is_exact());
    let x = vec![0.15; 9];
    let res = pde_residual(&family, 1.25, &x).unwrap();
    assert!(res.exactly_zero);
}

#[test]
fn float_boost_residual_below_grid_tolerance() {
    // Floats are snapped to dyadic rationals before assembly, so the symbolic
    // residual measures only the input rounding; it must stay tiny pointwise.
    let family = BlowupFamily::u_star(9, 1.0, vec![0.0; 9], float_boost()).unwrap();
    assert!(!family.is_exact());
    let mut worst: f64 = 0.0;
    for i in 0..9 {
        let mut x = vec![0.0; 9];
        x[i] = 0.35 - 0.05 * i as f64;
        let res = pde_residual(&family, 0.5, &x).unwrap();
        assert!(!res.exactly_zero);
        worst = worst.max(res.value.abs());
    }
    assert!(worst < 1e-10, "worst residual {worst:.3e}");
}

#[test]
fn perturbed_leading_constant_fails_to_solve() {
    let consts = profile_constants(9).unwrap();
    let c1 = consts.exact.as_ref().unwrap().c1.clone();
    let shifted = consts.with_c1(c1 + q(1));
    let family = BlowupFamily::new(
        FamilyKind::UStar,
        shifted,
        1.0,
        vec![0.0; 9],
        rational_boost(),
    )
    .unwrap();
    let res = pde_residual(&family, 0.7, &vec![0.05; 9]).unwrap();
    assert!(!res.exactly_zero);
    assert!(res.value.abs() > 1e-6, "residual {:.3e}", res.value);
}

#[test]
fn dimension_eight_profile_solves_to_rounding() {
    // the d = 8 constants are irrational, so only the snapped-float path exists
    let family = BlowupFamily::u_star(8, 1.0, vec![0.0; 8], BoostKernel::zero(8)).unwrap();
    assert!(!family.is_exact());
    for r in [0.0, 0.2, 0.5, 0.85] {
        let mut x = vec![0.0; 8];
        x[0] = 0.3 * r;
        x[3] = -0.2 * r;
        let res = pde_residual(&family, 0.5, &x).unwrap();
        assert!(res.value.abs() < 1e-10, "residual {:.3e}", res.value);
    }
}

#[test]
fn all_eigenfields_are_exact_under_rational_boost() {
    let boost = rational_boost();
    for label in ModeLabel::all() {
        let field = EigenField::new(label, boost.clone()).unwrap();
        let report = eigen_residual(&field);
        assert!(report.exact_zero, "mode {label} not annihilated exactly");
        assert_eq!(report.grid_sup, 0.0, "mode {label}");
        let expected = match label {
            ModeLabel::H => 3,
            ModeLabel::G(_) => 1,
            ModeLabel::Q(_) => 0,
        };
        assert_eq!(report.lambda, expected);
    }
}

#[test]
fn eigenfields_under_float_boost_stay_small_on_grid() {
    let boost = float_boost();
    for label in [ModeLabel::H, ModeLabel::G(0), ModeLabel::G(3), ModeLabel::Q(2)] {
        let field = EigenField::new(label, boost.clone()).unwrap();
        let report = eigen_residual(&field);
        assert!(!report.exact_zero);
        assert!(
            report.grid_sup < 1e-10,
            "mode {label} sup {:.3e}",
            report.grid_sup
        );
    }
}

#[test]
fn unboosted_mode_components_match_closed_forms() {
    let boost = BoostKernel::zero(9);
    let g0 = EigenField::new(ModeLabel::G(0), boost.clone()).unwrap();
    // Q(5) differentiates along the fifth axis, i.e. the xi[4] slot.
    let q5 = EigenField::new(ModeLabel::Q(5), boost).unwrap();
    let mut xi = vec![0.0; 9];
    xi[1] = 0.3;
    xi[4] = -0.55;
    let s: f64 = xi.iter().map(|v| v * v).sum();
    let d = 7.0 + 5.0 * s;
    let (g0_1, g0_2) = g0.eval(&xi).unwrap();
    assert!((g0_1 - (1.0 - s) / d.powi(3)).abs() < 1e-15);
    // second component from u2 = xi . grad u1 + (lambda + 2) u1
    let expected_g0_2 =
        -2.0 * s / d.powi(3) - 30.0 * s * (1.0 - s) / d.powi(4) + 3.0 * (1.0 - s) / d.powi(3);
    assert!((g0_2 - expected_g0_2).abs() < 1e-14);
    let (q5_1, _) = q5.eval(&xi).unwrap();
    let expected_q5 = 8640.0 * xi[4] * (7.0 - 3.0 * s) / d.powi(3);
    assert!((q5_1 - expected_q5).abs() < 1e-10);
}

#[test]
fn positivity_is_certified_for_strong_boost() {
    // single-axis rapidity 2 sits on the boundary of the certified range
    let mut a = vec![0.0; 9];
    a[0] = 2.0;
    let family =
        BlowupFamily::u_star(9, 1.0, vec![0.0; 9], BoostKernel::from_rapidities(&a)).unwrap();
    let coarse = positivity_on_ball(&family, 2).unwrap();
    assert_eq!(coarse.verdict, PositivityVerdict::Inconclusive);
    let fine = positivity_on_ball(&family, 400).unwrap();
    assert_eq!(fine.verdict, PositivityVerdict::CertifiedPositive);
    assert!(fine.lower_bound > 0.0);
    assert!(fine.min_value > fine.lower_bound);
    // the unboosted minimum is 10 on the sphere; boosting moves it below that
    assert!(fine.min_value < 10.0);
}

#[test]
fn profile_evaluation_rejects_kappa_pole() {
    let mut a = vec![0.0; 9];
    a[0] = 1.0;
    let boost = BoostKernel::from_rapidities(&a);
    let pole = boost.a0 / boost.avec[0]; // gamma vanishes at xi_1 = A0 / A1
    let family = BlowupFamily::ode_kappa(9, 1.0, vec![0.0; 9], boost).unwrap();
    let mut xi = vec![0.0; 9];
    xi[0] = pole;
    match eval_profile(&family, &xi) {
        Err(ProfileError::PoleEncountered { .. }) => {}
        other => panic!("expected pole error, got {other:?}"),
    }
}

#[test]
fn sobolev_seminorms_scale_with_the_predicted_exponents() {
    // u_lam(x) = U(|x| / lam) on the ball of radius lam; the k-th seminorm
    // must scale like lam^(d/2 - k).
    let family = BlowupFamily::u_star(9, 1.0, vec![0.0; 9], BoostKernel::zero(9)).unwrap();
    let gl = GaussLegendre::new(48);
    let lams = [0.8, 0.5, 0.3, 0.15];
    for k in 1..=3u32 {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for &lam in &lams {
            let val = gl
                .integrate(0.0, lam, |r| {
                    let rho = r / lam;
                    let g = radial_derivative_magnitude(&family, k, rho) / lam.powi(k as i32);
                    g * g * r.powi(8)
                })
                .sqrt();
            xs.push(lam.ln());
            ys.push(val.ln());
        }
        let (slope, _, _) = numkit::linear_fit(&xs, &ys).unwrap();
        let expected = 4.5 - k as f64;
        assert!(
            (slope - expected).abs() / expected.abs() < 0.02,
            "k = {k}: slope {slope:.4} vs {expected}"
        );
    }
}

/// k-th radial derivative of the profile by central differences. For the
/// homogeneity measurement only the radial part matters: the angular pieces
/// of the full derivative tensor rescale identically.
fn radial_derivative_magnitude(family: &BlowupFamily, k: u32, rho: f64) -> f64 {
    let h = 1e-4;
    let u = |r: f64| eval_profile(family, &radial_point(r)).unwrap();
    match k {
        1 => (u(rho + h) - u(rho - h)) / (2.0 * h),
        2 => (u(rho + h) - 2.0 * u(rho) + u(rho - h)) / (h * h),
        3 => {
            (u(rho + 2.0 * h) - 2.0 * u(rho + h) + 2.0 * u(rho - h) - u(rho - 2.0 * h))
                / (2.0 * h * h * h)
        }
        _ => unreachable!(),
    }
}

fn radial_point(r: f64) -> Vec<f64> {
    let mut x = vec![0.0; 9];
    x[0] = r;
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The composed map (shift, boosts, reflection) preserves the quadratic
    /// form |x - x0|^2 - (T - t)^2 up to roundoff.
    #[test]
    fn lorentz_map_preserves_the_light_cone_form(
        raps in prop::collection::vec(-1.0f64..1.0, 9),
        dir in prop::collection::vec(-1.0f64..1.0, 9),
        frac in 0.05f64..0.95,
        t in -0.5f64..0.9,
    ) {
        let boost = BoostKernel::from_rapidities(&raps);
        let t_blowup = 1.3;
        let x0: Vec<f64> = (0..9).map(|i| 0.02 * (i as f64 - 4.0)).collect();
        let norm: f64 = dir.iter().map(|v| v * v).sum::<f64>().sqrt().max(1e-3);
        let radius = frac * (t_blowup - t);
        let x: Vec<f64> = x0
            .iter()
            .zip(dir.iter())
            .map(|(x0i, di)| x0i + radius * di / norm)
            .collect();
        let (tp, xp) = boost.lorentz_map(t_blowup, &x0, t, &x).unwrap();
        let before: f64 = x
            .iter()
            .zip(x0.iter())
            .map(|(xi, x0i)| (xi - x0i).powi(2))
            .sum::<f64>()
            - (t_blowup - t).powi(2);
        let after: f64 = xp.iter().map(|v| v * v).sum::<f64>() - tp * tp;
        let scale = 1.0 + before.abs() + after.abs();
        prop_assert!(((before - after) / scale).abs() < 1e-12);
    }
}
