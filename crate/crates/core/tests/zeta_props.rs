use std::f64::consts::PI;

use hardy_core::special_fns::{chi, ComplexPoint};
use hardy_core::zeta_eval::{
    convexity_check, zeta_em, zeta_euler_product, zeta_first_approx, ApproxConfig, XRule, ZetaMethod,
};
use hardy_core::Error;
use proptest::prelude::*;

fn p(sigma: f64, t: f64) -> ComplexPoint {
    ComplexPoint::new(sigma, t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn functional_equation_closes(sigma in 0.1f64..0.9, t in 10.0f64..5e3) {
        let s = p(sigma, t);
        let lhs = zeta_em(s, 1e-11).unwrap().value;
        let rhs = chi(s).unwrap() * zeta_em(s.reflect(), 1e-11).unwrap().value;
        let scale = lhs.norm().max(1.0) * chi(s).unwrap().norm().max(1.0);
        prop_assert!((lhs - rhs).norm() < 1e-8 * scale, "{s:?}: {lhs} vs {rhs}");
    }

    #[test]
    fn schwarz_reflection_of_zeta(sigma in 0.1f64..3.0, t in 0.5f64..1e4) {
        let a = zeta_em(p(sigma, t), 1e-10).unwrap();
        let b = zeta_em(p(sigma, -t), 1e-10).unwrap();
        prop_assert!((a.value - b.value.conj()).norm() <= a.err_bound + b.err_bound);
    }

    #[test]
    fn euler_maclaurin_meets_its_target(sigma in 0.05f64..3.0, t in 0.0f64..1e5) {
        let v = zeta_em(p(sigma, t), 1e-10).unwrap();
        prop_assert!(v.err_bound > 0.0);
        prop_assert!(v.terms_used >= 1);
        prop_assert_eq!(v.method, ZetaMethod::EulerMaclaurin);
        // above t ≈ 10³ the rounding floor of the phases t·log n dominates
        let cap = if t <= 1e3 { 1e-10 } else { 1e-6 };
        prop_assert!(v.err_bound <= cap, "{:?}", v);
    }

    #[test]
    fn euler_product_agrees_right_of_one(sigma in 1.5f64..3.0, t in 0.0f64..1e3) {
        let s = p(sigma, t);
        let em = zeta_em(s, 1e-12).unwrap();
        let ep = zeta_euler_product(s, 100_000).unwrap();
        prop_assert!((em.value - ep.value).norm() <= ep.err_bound + em.err_bound);
    }

    #[test]
    fn first_approx_within_envelope(sigma in 0.2f64..2.0, t in 10.0f64..1e4) {
        let cfg = ApproxConfig::default();
        let s = p(sigma, t);
        let fa = zeta_first_approx(s, &cfg).unwrap();
        let em = zeta_em(s, cfg.em_error_target).unwrap();
        let x = cfg.x_rule.cutoff(t, cfg.c);
        prop_assert!((fa.value - em.value).norm() <= 2.0 * x.powf(-sigma), "{s:?}");
        prop_assert!((fa.err_bound - 2.0 * x.powf(-sigma)).abs() < 1e-15);
    }
}

#[test]
fn em_pole_and_region() {
    assert!(matches!(zeta_em(p(1.0, 0.0), 1e-10), Err(Error::Pole)));
    assert!(matches!(zeta_em(p(0.0, 5.0), 1e-10), Err(Error::OutOfRegion(_))));
    assert!(matches!(zeta_em(p(-1.0, 5.0), 1e-10), Err(Error::OutOfRegion(_))));
}

#[test]
fn first_approx_at_two_with_large_cutoff() {
    let cfg = ApproxConfig {
        x_rule: XRule::Fixed(1e6),
        ..ApproxConfig::default()
    };
    let v = zeta_first_approx(p(2.0, 0.0), &cfg).unwrap();
    assert!((v.value.re - PI * PI / 6.0).abs() < 1e-5);
}

#[test]
fn first_approx_cross_method_at_1000() {
    let cfg = ApproxConfig::default();
    let s = p(0.5, 1000.0);
    let fa = zeta_first_approx(s, &cfg).unwrap();
    let em = zeta_em(s, 1e-10).unwrap();
    assert!((fa.value - em.value).norm() <= fa.err_bound);
}

#[test]
fn first_approx_rejects_short_sums() {
    let cfg = ApproxConfig {
        x_rule: XRule::Fixed(500.0),
        ..ApproxConfig::default()
    };
    match zeta_first_approx(p(0.5, 1000.0), &cfg) {
        Err(Error::Precondition { max_t: Some(m), .. }) => {
            assert!((m - 2.0 * PI * 500.0 / 4.0).abs() < 1e-9);
            assert!(m < 1000.0);
        }
        other => panic!("expected precondition error, got {other:?}"),
    }
}

#[test]
fn config_validation() {
    let bad = ApproxConfig {
        c: 1.0,
        ..ApproxConfig::default()
    };
    assert!(zeta_first_approx(p(0.5, 100.0), &bad).is_err());
    let bad = ApproxConfig {
        em_error_target: 0.0,
        ..ApproxConfig::default()
    };
    assert!(bad.validate().is_err());
}

#[test]
fn euler_product_region() {
    assert!(matches!(zeta_euler_product(p(1.0, 3.0), 1000), Err(Error::OutOfRegion(_))));
    let v = zeta_euler_product(p(2.0, 0.0), 10_000).unwrap();
    assert!((v.value.re - PI * PI / 6.0).abs() <= v.err_bound);
    assert_eq!(v.terms_used, 1229);
}

#[test]
fn convexity_ratio_stays_small() {
    let ts = [10.0, 100.0, 1e3, 1e4, 1e5];
    let sigmas = [0.1, 0.25, 0.5, 0.75, 1.0];
    let r = convexity_check(&ts, &sigmas).unwrap();
    assert_eq!(r.entries.len(), 25);
    assert!(r.max_ratio < 1.0, "max ratio {} at {:?}", r.max_ratio, r.argmax);
    assert!(convexity_check(&[5.0], &sigmas).is_err());
    assert!(convexity_check(&ts, &[0.0]).is_err());
}
