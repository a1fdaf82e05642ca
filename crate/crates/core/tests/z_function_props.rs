use std::f64::consts::PI;

use hardy_core::z_function::{
    riemann_siegel_cutoff, z_definition, z_dirichlet, z_riemann_siegel, z_riemann_siegel_with,
    ZMethod,
};
use hardy_core::zeta_eval::ApproxConfig;
use hardy_core::Error;
use proptest::prelude::*;

/// Bound on the leading Riemann–Siegel correction: cos(π/8)·(2π)^{1/4}.
fn rs_leading_constant() -> f64 {
    (PI / 8.0).cos() * (2.0 * PI).powf(0.25)
}

/// Leading correction plus the remainder bound 0.127·(t/2π)^{-3/4} for t ≥ 200.
fn rs_remainder_bound(t: f64) -> f64 {
    rs_leading_constant() * t.powf(-0.25) + 0.127 * (t / (2.0 * PI)).powf(-0.75)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn z_is_real(t in 10.0f64..1e5) {
        let z = z_definition(t, 1e-10).unwrap();
        prop_assert!(z.imag_residual <= z.err_bound + 1e-12, "{z:?}");
        prop_assert_eq!(z.method, ZMethod::Definition);
    }

    #[test]
    fn dirichlet_route_within_budget(t_anchor in 100.0f64..2e4, frac in 0.0f64..1.0) {
        let cfg = ApproxConfig::default();
        let t = t_anchor * (1.0 + frac * 0.999);
        let zd = z_dirichlet(t, &cfg, t_anchor).unwrap();
        let zz = z_definition(t, 1e-10).unwrap();
        prop_assert!((zd.z - zz.z).abs() <= zd.err_bound + zz.err_bound, "t = {t}");
    }

    #[test]
    fn riemann_siegel_within_correction_terms(t in 200.0f64..1e5) {
        let rs = z_riemann_siegel(t).unwrap();
        let zz = z_definition(t, 1e-10).unwrap();
        let bound = rs_remainder_bound(t) + zz.err_bound + 1e-8;
        prop_assert!((rs.z - zz.z).abs() <= bound, "t = {t}: {} vs {}", rs.z, zz.z);
    }

    #[test]
    fn kappa_scales_the_budget(t in 10.0f64..1e4, kappa in 0.1f64..10.0) {
        let a = z_riemann_siegel_with(t, kappa).unwrap();
        let b = z_riemann_siegel(t).unwrap();
        prop_assert_eq!(a.z, b.z);
        prop_assert!((a.err_bound - kappa * b.err_bound).abs() <= 1e-15 * a.err_bound.max(1.0));
    }
}

#[test]
fn riemann_siegel_cutoff_is_inclusive() {
    for n in 1..200usize {
        let t = 2.0 * PI * (n * n) as f64;
        assert_eq!(riemann_siegel_cutoff(t), n, "t = 2π·{n}²");
    }
}

#[test]
fn unit_budget_records_its_worst_case() {
    let mut worst: f64 = 0.0;
    for k in 0..2000 {
        let t = 200.0 + k as f64 * 49.9;
        let rs = z_riemann_siegel(t).unwrap();
        let zz = z_definition(t, 1e-10).unwrap();
        let diff = (rs.z - zz.z).abs();
        assert!(diff <= rs_remainder_bound(t) + zz.err_bound + 1e-8, "t = {t}: {diff}");
        worst = worst.max(diff * t.powf(0.25));
    }
    // the main sum alone needs a constant above 1
    assert!(worst > 1.0, "worst ratio {worst}");
}

#[test]
fn domain_errors() {
    assert!(matches!(z_definition(0.0, 1e-10), Err(Error::Domain(_))));
    assert!(matches!(z_riemann_siegel(1.0), Err(Error::Domain(_))));
    assert!(z_riemann_siegel_with(100.0, 0.0).is_err());
    let cfg = ApproxConfig::default();
    assert!(matches!(z_dirichlet(300.0, &cfg, 100.0), Err(Error::Precondition { .. })));
}
