use hardy_core::hardy_harness::{
    count_zeros, fit_scaling, hardy_scan, lower_bound_contour, riemann_von_mangoldt, scan_zeros,
    verify_cauchy_rectangle, HardyScanReport, ScalingMetric, NOISE_FACTOR,
};
use hardy_core::quad::{integrate, uniform_breaks};
use hardy_core::z_function::{z_definition, ZMethod};
use hardy_core::{Complex, Error};

fn z(t: f64) -> f64 {
    z_definition(t, 1e-10).unwrap().z
}

#[test]
fn brackets_are_valid_and_ordered() {
    let brackets = scan_zeros(10.0, 300.0, 1e-9).unwrap();
    for b in &brackets {
        assert!(b.z_lo * b.z_hi < 0.0, "{b:?}");
        assert!(b.t_lo < b.refined_t && b.refined_t < b.t_hi, "{b:?}");
        for t in [b.t_lo, b.t_hi] {
            let e = z_definition(t, 1e-10).unwrap();
            assert!(e.z.abs() > NOISE_FACTOR * e.err_bound, "noisy endpoint {e:?}");
        }
    }
    for w in brackets.windows(2) {
        assert!(w[0].t_hi <= w[1].t_lo);
    }
}

#[test]
fn triangle_identity_between_zeros() {
    let brackets = scan_zeros(100.0, 140.0, 1e-12).unwrap();
    let f = |t: f64| Complex::new(z(t), 0.0);
    let g = |t: f64| Complex::new(z(t).abs(), 0.0);
    for w in brackets.windows(2) {
        let (lo, hi) = (w[0].refined_t, w[1].refined_t);
        let breaks = uniform_breaks(lo, hi, 4);
        let signed = integrate(&f, &breaks, 1e-10, 10_000).unwrap();
        let absolute = integrate(&g, &breaks, 1e-10, 10_000).unwrap();
        let gap = (signed.value.re.abs() - absolute.value.re).abs();
        assert!(gap <= signed.err + absolute.err + 1e-9, "[{lo}, {hi}]: gap {gap}");
    }
}

#[test]
fn zero_count_is_monotone_and_tracks_main_term() {
    let mut prev = 0;
    for t in [20.0, 50.0, 100.0, 200.0, 400.0] {
        let c = count_zeros(t, 1e-7).unwrap();
        assert!(c.count >= prev);
        assert!(c.deviation <= 2.0 * t.ln(), "{c:?}");
        assert!((c.main_term - riemann_von_mangoldt(t)).abs() < 1e-12);
        prev = c.count;
    }
    assert!(count_zeros(19.0, 1e-7).is_err());
}

#[test]
fn scan_preconditions() {
    assert!(scan_zeros(5.0, 20.0, 1e-6).is_err());
    assert!(scan_zeros(20.0, 20.0, 1e-6).is_err());
    assert!(scan_zeros(20.0, 30.0, 0.0).is_err());
}

#[test]
fn hardy_window_at_1000() {
    let r = hardy_scan(1000.0, 1e-4, ZMethod::Definition).unwrap();
    assert!(r.triangle_holds());
    assert!(r.strictly_below_one());
    assert!(r.ratio < 0.5);
    assert!(r.lower_ratio >= 0.9, "{r:?}");
    assert!(r.bound_t34 <= 10.0);
    assert!(r.i.im.abs() <= 10.0 * r.quad_err + 1e-12);
    assert!(r.quad_err <= 1e-4);
    assert!(r.sign_changes >= 1);
}

#[test]
fn hardy_routes_agree_roughly() {
    let def = hardy_scan(500.0, 1e-4, ZMethod::Definition).unwrap();
    for m in [ZMethod::RiemannSiegel, ZMethod::DirichletPoly] {
        let r = hardy_scan(500.0, 1e-4, m).unwrap();
        assert!(r.triangle_holds(), "{r:?}");
        assert!(r.strictly_below_one(), "{r:?}");
        assert!((r.j - def.j).abs() <= r.quad_err + def.quad_err, "{m:?}: {r:?}");
    }
}

#[test]
fn hardy_preconditions() {
    assert!(matches!(hardy_scan(40.0, 1e-4, ZMethod::Definition), Err(Error::Argument(_))));
    assert!(hardy_scan(100.0, 0.0, ZMethod::Definition).is_err());
}

#[test]
fn j_grows_linearly() {
    let reports: Vec<HardyScanReport> = [200.0, 500.0, 1000.0, 2000.0]
        .iter()
        .map(|&t| hardy_scan(t, 1e-4, ZMethod::Definition).unwrap())
        .collect();
    let fit = fit_scaling(&reports, ScalingMetric::J).unwrap();
    assert!((0.95..=1.15).contains(&fit.slope), "{fit:?}");
    assert!(fit.envelope_ok.is_none());
    let fit = fit_scaling(&reports, ScalingMetric::AbsI).unwrap();
    assert_eq!(fit.envelope_ok, Some(true));
    assert!(fit_scaling(&reports[..2], ScalingMetric::J).is_err());
    let mut windows: Vec<usize> = reports.iter().map(|r| r.sign_changes).collect();
    let sorted = windows.clone();
    windows.sort_unstable();
    assert_eq!(windows, sorted);
}

#[test]
fn lower_contour_closes() {
    let r = lower_bound_contour(100.0).unwrap();
    assert!(r.right_side_ok(), "{r:?}");
    assert!(r.closure_ok(), "{r:?}");
    let r = lower_bound_contour(1000.0).unwrap();
    assert!(r.right_side_ok() && r.closure_ok());
    assert!(r.bottom.value.norm() <= 10.0 * 1000f64.powf(0.25));
    assert!(r.top.value.norm() <= 10.0 * 1000f64.powf(0.25));
    assert!(lower_bound_contour(10.0).is_err());
}

#[test]
fn cauchy_rectangle_closes() {
    for t in [100.0, 1000.0] {
        let r = verify_cauchy_rectangle(t, 0.25).unwrap();
        assert!(r.closure_ok(), "{r:?}");
        assert!(r.horizontal_ratio <= 2.0, "{r:?}");
    }
    let r = verify_cauchy_rectangle(100.0, 0.25).unwrap();
    assert!(r.residual <= 1e-6);
    match verify_cauchy_rectangle(100.0, 0.6) {
        Err(Error::Precondition { message, .. }) => assert!(message.contains("0 < delta < 1/2")),
        other => panic!("expected precondition error, got {other:?}"),
    }
}
