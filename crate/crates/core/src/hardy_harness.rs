//! I(T) = ∫_T^{2T} Z and J(T) = ∫_T^{2T} |Z|, the contour computations
//! behind the lower bound, sign-change scanning and scaling fits.
//!
//! If Z kept one sign on [T, 2T] then |I| = J. The scan reports both and the
//! sign changes that a strict inequality |I| < J forces.
//!
//! All grid and panel work is mapped in parallel and reduced in index order,
//! so results are bitwise independent of the rayon pool size.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate, uniform_breaks, QuadResult, DEFAULT_MAX_PANELS};
use crate::special_fns::{chi_inv_sqrt, theta, theta_prime, ComplexPoint};
use crate::z_function::{z_definition, z_dirichlet, z_riemann_siegel, ZEvaluation, ZMethod};
use crate::zeta_eval::{zeta_em, ApproxConfig, XRule};
use crate::Complex;

/// Euler–Maclaurin target used for Z evaluations inside the harness.
pub const HARNESS_EM_TARGET: f64 = 1e-10;

/// Bisection tolerance for the zeros that split the |Z| integral.
pub const SPLIT_ZERO_TOL: f64 = 1e-7;

/// Grid points whose |Z| is within this multiple of the evaluation budget
/// are treated as sign-indeterminate.
pub const NOISE_FACTOR: f64 = 5.0;

/// Default total quadrature tolerance for I and J.
pub const DEFAULT_QUAD_TOL: f64 = 1e-4;

/// Envelope constant for |I| ≤ c·T^{3/4}.
pub const UPPER_ENVELOPE: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroBracket {
    pub t_lo: f64,
    pub t_hi: f64,
    pub z_lo: f64,
    pub z_hi: f64,
    pub refined_t: f64,
    pub tol: f64,
    pub iterations: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HardyScanReport {
    pub t_anchor: f64,
    pub method: ZMethod,
    pub i: Complex,
    pub j: f64,
    pub quad_err: f64,
    pub ratio: f64,
    pub bound_t34: f64,
    pub lower_ratio: f64,
    pub sign_changes: usize,
}

impl HardyScanReport {
    /// |I| ≤ J + 2·quad_err.
    pub fn triangle_holds(&self) -> bool {
        self.i.norm() <= self.j + 2.0 * self.quad_err
    }

    /// ratio < 1 − 3·quad_err/J, the strict form of |I| < J.
    pub fn strictly_below_one(&self) -> bool {
        self.ratio < 1.0 - 3.0 * self.quad_err / self.j
    }
}

/// Evaluates Z(t) by the requested route. The Dirichlet route anchors its
/// window at `t_anchor`.
#[derive(Debug, Clone, Copy)]
pub struct ZSource {
    pub method: ZMethod,
    pub em_target: f64,
    pub t_anchor: f64,
    pub approx: ApproxConfig,
}

impl ZSource {
    pub fn new(method: ZMethod, t_anchor: f64) -> Self {
        Self {
            method,
            em_target: HARNESS_EM_TARGET,
            t_anchor,
            approx: ApproxConfig {
                x_rule: XRule::FromAnchor(t_anchor),
                ..ApproxConfig::default()
            },
        }
    }

    pub fn definition() -> Self {
        Self::new(ZMethod::Definition, 0.0)
    }

    pub fn eval(&self, t: f64) -> Result<ZEvaluation> {
        match self.method {
            ZMethod::Definition => z_definition(t, self.em_target),
            ZMethod::RiemannSiegel => z_riemann_siegel(t),
            ZMethod::DirichletPoly => {
                // the top of [T, 2T] is excluded by an epsilon; clamp onto it
                let top = 2.0 * self.t_anchor * (1.0 - crate::z_function::WINDOW_EPS);
                z_dirichlet(t.min(top), &self.approx, self.t_anchor)
            }
        }
    }

    /// Complex integrand for I: e^{iθ}ζ on the definition route (whose
    /// imaginary part is the realness residual), Z itself otherwise.
    fn integrand(&self, t: f64) -> Result<(Complex, f64)> {
        match self.method {
            ZMethod::Definition => {
                let th = theta(t)?;
                let zeta = zeta_em(ComplexPoint::critical(t)?, self.em_target)?;
                let w = Complex::from_polar(1.0, th.theta) * zeta.value;
                let err = zeta.err_bound
                    + (th.err_bound + 2.0 * f64::EPSILON * th.theta.abs()) * zeta.value.norm();
                Ok((w, err))
            }
            _ => {
                let z = self.eval(t)?;
                Ok((Complex::new(z.z, 0.0), z.err_bound))
            }
        }
    }
}

fn scan_step(t_end: f64) -> f64 {
    // a quarter of the mean zero gap π/θ'
    let slope = theta_prime(t_end.max(10.0));
    if slope <= 0.0 {
        0.5
    } else {
        (PI / (4.0 * slope)).min(0.5)
    }
}

#[derive(Debug, Clone, Copy)]
struct Sample {
    t: f64,
    z: f64,
    certain: bool,
}

fn sample(source: &ZSource, t: f64) -> Result<Sample> {
    let e = source.eval(t)?;
    Ok(Sample {
        t,
        z: e.z,
        certain: e.z.abs() > NOISE_FACTOR * e.err_bound,
    })
}

fn bisect(source: &ZSource, lo: Sample, hi: Sample, tol: f64) -> Result<ZeroBracket> {
    let (mut lo, mut hi) = (lo, hi);
    let mut iterations = 0;
    let mut refined = None;
    while hi.t - lo.t > tol {
        let mid_t = 0.5 * (lo.t + hi.t);
        if !(lo.t < mid_t && mid_t < hi.t) {
            break;
        }
        iterations += 1;
        let mid = sample(source, mid_t)?;
        if !mid.certain {
            // the sign can no longer be resolved: the zero is at mid_t to
            // within the evaluation noise
            refined = Some(mid_t);
            break;
        }
        if mid.z.signum() == lo.z.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ZeroBracket {
        t_lo: lo.t,
        t_hi: hi.t,
        z_lo: lo.z,
        z_hi: hi.z,
        refined_t: refined.unwrap_or(0.5 * (lo.t + hi.t)),
        tol,
        iterations,
    })
}

/// Sign-change scan of Z on [t_start, t_end] with the given evaluator.
pub fn scan_zeros_with(source: &ZSource, t_start: f64, t_end: f64, tol: f64) -> Result<Vec<ZeroBracket>> {
    if !(t_start >= 10.0) || !t_end.is_finite() || !(t_end > t_start) {
        return Err(Error::Argument(format!(
            "need t_end > t_start >= 10, got [{t_start}, {t_end}]"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::Argument(format!("tolerance must be positive, got {tol}")));
    }
    let h = scan_step(t_end);
    let steps = ((t_end - t_start) / h).ceil().max(1.0) as usize;
    let grid = uniform_breaks(t_start, t_end, steps);
    let samples: Vec<Sample> = grid
        .par_iter()
        .map(|&t| sample(source, t))
        .collect::<Result<_>>()?;

    let mut pairs = Vec::new();
    let mut last: Option<Sample> = None;
    for s in samples.into_iter().filter(|s| s.certain) {
        if let Some(prev) = last {
            if prev.z.signum() != s.z.signum() {
                pairs.push((prev, s));
            }
        }
        last = Some(s);
    }
    pairs
        .into_par_iter()
        .map(|(lo, hi)| bisect(source, lo, hi, tol))
        .collect()
}

/// Sign changes of Z (definition route) on [t_start, t_end], each bisected
/// to width ≤ tol. Zeros of even order are invisible to this scan.
pub fn scan_zeros(t_start: f64, t_end: f64, tol: f64) -> Result<Vec<ZeroBracket>> {
    scan_zeros_with(&ZSource::definition(), t_start, t_end, tol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZeroCount {
    pub t: f64,
    pub count: usize,
    /// (T/2π) log(T/2π) − T/2π + 7/8.
    pub main_term: f64,
    pub deviation: f64,
}

pub fn riemann_von_mangoldt(t: f64) -> f64 {
    let x = t / (2.0 * PI);
    x * x.ln() - x + 7.0 / 8.0
}

/// Sign changes on [10, T]; Z has no zeros below 10.
pub fn count_zeros(t: f64, tol: f64) -> Result<ZeroCount> {
    if !(t >= 20.0) || !t.is_finite() {
        return Err(Error::Argument(format!("count_zeros requires T >= 20, got {t}")));
    }
    let count = scan_zeros(10.0, t, tol)?.len();
    let main_term = riemann_von_mangoldt(t);
    Ok(ZeroCount {
        t,
        count,
        main_term,
        deviation: (count as f64 - main_term).abs(),
    })
}

/// Panel partition of [a, b] with width ≤ π/(ν + 1), ν the largest local
/// frequency of the integrand.
fn frequency_breaks(a: f64, b: f64, freq: impl Fn(f64) -> f64) -> Vec<f64> {
    let w = PI / (freq(b).max(freq(a)).max(0.0) + 1.0);
    let n = ((b - a) / w).ceil().max(1.0) as usize;
    uniform_breaks(a, b, n)
}

fn critical_frequency(t: f64) -> f64 {
    (t / (2.0 * PI)).ln().max(0.0)
}

/// Integrates over [a, b] and returns the quadrature result plus the
/// evaluation-error budget ∫ err_bound.
fn integrate_budgeted<F>(f: F, breaks: &[f64], tol: f64) -> Result<(QuadResult, f64)>
where
    F: Fn(f64) -> Result<(Complex, f64)> + Sync,
{
    let failure = std::sync::Mutex::new(None::<Error>);
    let max_err = std::sync::Mutex::new(0.0f64);
    let g = |x: f64| match f(x) {
        Ok((v, e)) => {
            let mut m = max_err.lock().expect("poisoned");
            *m = m.max(e);
            v
        }
        Err(e) => {
            failure.lock().expect("poisoned").get_or_insert(e);
            Complex::new(f64::NAN, f64::NAN)
        }
    };
    let r = integrate(&g, breaks, tol, DEFAULT_MAX_PANELS);
    if let Some(e) = failure.into_inner().expect("poisoned") {
        return Err(e);
    }
    let r = r?;
    let len = breaks[breaks.len() - 1] - breaks[0];
    let eval_budget = len * max_err.into_inner().expect("poisoned");
    Ok((r, eval_budget))
}

/// Computes I(T), J(T) and the sign-change count on [T, 2T].
///
/// J is integrated as ±Z on the sign regions between refined zeros, which
/// avoids the kinks of |Z|. Regions are integrated in parallel and summed in
/// order.
pub fn hardy_scan(t_anchor: f64, quad_tol: f64, method: ZMethod) -> Result<HardyScanReport> {
    if !(t_anchor >= 50.0) || !t_anchor.is_finite() {
        return Err(Error::Argument(format!("hardy_scan requires T >= 50, got {t_anchor}")));
    }
    if !(quad_tol > 0.0) {
        return Err(Error::Argument(format!("quad_tol must be positive, got {quad_tol}")));
    }
    let source = ZSource::new(method, t_anchor);
    let a = t_anchor;
    let b = 2.0 * t_anchor;
    let zeros = scan_zeros_with(&source, a, b, SPLIT_ZERO_TOL)?;

    let mut cuts = Vec::with_capacity(zeros.len() + 2);
    cuts.push(a);
    cuts.extend(zeros.iter().map(|z| z.refined_t).filter(|&t| t > a && t < b));
    cuts.push(b);

    let region_results: Vec<Result<(QuadResult, f64)>> = cuts
        .par_windows(2)
        .map(|w| {
            let (lo, hi) = (w[0], w[1]);
            let breaks = frequency_breaks(lo, hi, critical_frequency);
            let tol = quad_tol * 0.5 * (hi - lo) / (b - a);
            integrate_budgeted(|t| source.integrand(t), &breaks, tol)
        })
        .collect();

    let mut i_total = Complex::new(0.0, 0.0);
    let mut j_total = 0.0;
    let mut quad_err = 0.0;
    let mut eval_err = 0.0;
    let mut converged = true;
    for r in region_results {
        let (q, e) = r?;
        i_total += q.value;
        j_total += q.value.re.abs();
        quad_err += q.err;
        eval_err += e;
        converged &= q.converged;
    }
    if !converged || quad_err > quad_tol {
        return Err(Error::Accuracy {
            target: quad_tol,
            estimate: quad_err,
            partial: Some((i_total.norm(), j_total)),
        });
    }
    // the evaluation budget of an approximate route is a model error, not a
    // quadrature failure, but it is carried in the reported error
    let total_err = quad_err + eval_err;
    Ok(HardyScanReport {
        t_anchor,
        method,
        i: i_total,
        j: j_total,
        quad_err: total_err,
        ratio: i_total.norm() / j_total,
        bound_t34: i_total.norm() / t_anchor.powf(0.75),
        lower_ratio: j_total / t_anchor,
        sign_changes: zeros.len(),
    })
}

/// Integral along one straight side, with its error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SideIntegral {
    pub from: Complex,
    pub to: Complex,
    pub value: Complex,
    /// Quadrature error plus integrated evaluation error.
    pub err: f64,
}

/// ∫ f(s) ds along the segment from `from` to `to`, where the segment is
/// horizontal or vertical.
fn side_integral<F>(from: Complex, to: Complex, f: F, tol: f64) -> Result<SideIntegral>
where
    F: Fn(Complex) -> Result<(Complex, f64)> + Sync,
{
    let vertical = from.re == to.re;
    let (lo, hi, sign) = if vertical {
        (from.im.min(to.im), from.im.max(to.im), if to.im > from.im { 1.0 } else { -1.0 })
    } else {
        (from.re.min(to.re), from.re.max(to.re), if to.re > from.re { 1.0 } else { -1.0 })
    };
    let breaks = if vertical {
        frequency_breaks(lo, hi, critical_frequency)
    } else {
        uniform_breaks(lo, hi, 8)
    };
    let point = |x: f64| {
        if vertical {
            Complex::new(from.re, x)
        } else {
            Complex::new(x, from.im)
        }
    };
    let (q, eval_budget) = integrate_budgeted(|x| f(point(x)), &breaks, tol)?;
    let q = q.into_checked(tol)?;
    // ds = i dt on vertical sides
    let dir = if vertical { Complex::new(0.0, sign) } else { Complex::new(sign, 0.0) };
    Ok(SideIntegral {
        from,
        to,
        value: q.value * dir,
        err: q.err + eval_budget,
    })
}

const CONTOUR_EM_TARGET: f64 = 1e-11;
const CONTOUR_QUAD_TOL: f64 = 1e-8;

fn zeta_at(s: Complex) -> Result<(Complex, f64)> {
    let z = zeta_em(ComplexPoint::from_complex(s)?, CONTOUR_EM_TARGET)?;
    Ok((z.value, z.err_bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerContourRecord {
    pub t_anchor: f64,
    /// 1/2 + iT → 2 + iT
    pub bottom: SideIntegral,
    /// 2 + iT → 2 + 2iT
    pub right: SideIntegral,
    /// 2 + 2iT → 1/2 + 2iT
    pub top: SideIntegral,
    /// 1/2 + iT → 1/2 + 2iT
    pub direct: SideIntegral,
    pub closure_residual: f64,
    pub closure_budget: f64,
    /// |right − iT|
    pub right_deviation: f64,
    /// max(|bottom|, |top|) / T^{1/4}
    pub horizontal_ratio: f64,
}

impl LowerContourRecord {
    pub fn closure_ok(&self) -> bool {
        self.closure_residual <= self.closure_budget
    }

    /// The σ = 2 side equals iT + O(1); the O(1) is at most
    /// Σ_{n≥2} 2/(n² log n) < 5.
    pub fn right_side_ok(&self) -> bool {
        self.right_deviation <= 5.0
    }
}

/// Integrates ζ around the rectangle 1/2+iT, 2+iT, 2+2iT, 1/2+2iT and
/// compares with the direct critical-line integral.
pub fn lower_bound_contour(t_anchor: f64) -> Result<LowerContourRecord> {
    if !(t_anchor >= 50.0) || !t_anchor.is_finite() {
        return Err(Error::Argument(format!("contour requires T >= 50, got {t_anchor}")));
    }
    let t = t_anchor;
    let p1 = Complex::new(0.5, t);
    let p2 = Complex::new(2.0, t);
    let p3 = Complex::new(2.0, 2.0 * t);
    let p4 = Complex::new(0.5, 2.0 * t);
    let sides: Vec<Result<SideIntegral>> = [(p1, p2), (p2, p3), (p3, p4), (p1, p4)]
        .par_iter()
        .map(|&(from, to)| side_integral(from, to, zeta_at, CONTOUR_QUAD_TOL))
        .collect();
    let mut it = sides.into_iter();
    let bottom = it.next().expect("four sides")?;
    let right = it.next().expect("four sides")?;
    let top = it.next().expect("four sides")?;
    let direct = it.next().expect("four sides")?;

    let closure_residual = (bottom.value + right.value + top.value - direct.value).norm();
    let closure_budget = bottom.err + right.err + top.err + direct.err;
    let horizontal = bottom.value.norm().max(top.value.norm());
    Ok(LowerContourRecord {
        t_anchor,
        bottom,
        right,
        top,
        direct,
        closure_residual,
        closure_budget,
        right_deviation: (right.value - Complex::new(0.0, t)).norm(),
        horizontal_ratio: horizontal / t.powf(0.25),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchyRectangleRecord {
    pub t_anchor: f64,
    pub delta: f64,
    /// 1/2+iT → 1+δ+iT, then counter-clockwise.
    pub sides: [SideIntegral; 4],
    pub residual: f64,
    pub budget: f64,
    /// max(|bottom|, |top|) / T^{1/4+δ/2}
    pub horizontal_ratio: f64,
}

impl CauchyRectangleRecord {
    pub fn closure_ok(&self) -> bool {
        self.residual <= self.budget
    }
}

/// ∮ χ(s)^{−1/2} ζ(s) ds over the rectangle with vertices 1/2+iT, 1+δ+iT,
/// 1+δ+2iT, 1/2+2iT. The integrand is analytic there, so the residual is
/// pure quadrature and evaluation error.
pub fn verify_cauchy_rectangle(t_anchor: f64, delta: f64) -> Result<CauchyRectangleRecord> {
    verify_cauchy_rectangle_tol(t_anchor, delta, 1e-7)
}

pub fn verify_cauchy_rectangle_tol(t_anchor: f64, delta: f64, side_tol: f64) -> Result<CauchyRectangleRecord> {
    if !(t_anchor >= 50.0) || !t_anchor.is_finite() {
        return Err(Error::precondition(format!("T must be >= 50, got {t_anchor}")));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::precondition(format!(
            "delta must satisfy 0 < delta < 1/2, got {delta}"
        )));
    }
    let t = t_anchor;
    let right = 1.0 + delta;
    let corners = [
        Complex::new(0.5, t),
        Complex::new(right, t),
        Complex::new(right, 2.0 * t),
        Complex::new(0.5, 2.0 * t),
    ];
    let integrand = |s: Complex| -> Result<(Complex, f64)> {
        let p = ComplexPoint::from_complex(s)?;
        let factor = chi_inv_sqrt(p)?;
        let (z, e) = zeta_at(s)?;
        Ok((factor * z, e * factor.norm() + 8.0 * f64::EPSILON * (factor * z).norm() * s.im.abs().ln()))
    };
    let results: Vec<Result<SideIntegral>> = (0..4)
        .into_par_iter()
        .map(|k| side_integral(corners[k], corners[(k + 1) % 4], integrand, side_tol))
        .collect();
    let mut sides = Vec::with_capacity(4);
    for r in results {
        sides.push(r?);
    }
    let sides: [SideIntegral; 4] = sides.try_into().expect("four sides");
    let total = sides.iter().fold(Complex::new(0.0, 0.0), |acc, s| acc + s.value);
    let budget = sides.iter().map(|s| s.err).sum();
    let horizontal = sides[0].value.norm().max(sides[2].value.norm());
    Ok(CauchyRectangleRecord {
        t_anchor,
        delta,
        sides,
        residual: total.norm(),
        budget,
        horizontal_ratio: horizontal / t.powf(0.25 + 0.5 * delta),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingMetric {
    AbsI,
    J,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub t_values: Vec<f64>,
    pub metric: ScalingMetric,
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
    /// For `AbsI`: whether |I| ≤ 10·T^{3/4} at every T.
    pub envelope_ok: Option<bool>,
}

/// Least-squares fit of log(metric) against log T.
pub fn fit_scaling(reports: &[HardyScanReport], metric: ScalingMetric) -> Result<ScalingFit> {
    if reports.len() < 3 {
        return Err(Error::Argument(format!(
            "scaling fit needs at least 3 reports, got {}",
            reports.len()
        )));
    }
    let mut sorted: Vec<&HardyScanReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.t_anchor.total_cmp(&b.t_anchor));
    if sorted.windows(2).any(|w| !(w[0].t_anchor < w[1].t_anchor)) {
        return Err(Error::Argument("window anchors must be distinct".into()));
    }
    let value = |r: &HardyScanReport| match metric {
        ScalingMetric::AbsI => r.i.norm(),
        ScalingMetric::J => r.j,
    };
    if sorted.iter().any(|r| !(value(r) > 0.0)) {
        return Err(Error::Argument("metric must be positive for a log-log fit".into()));
    }
    let xs: Vec<f64> = sorted.iter().map(|r| r.t_anchor.ln()).collect();
    let ys: Vec<f64> = sorted.iter().map(|r| value(r).ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).abs())
        .fold(0.0, f64::max);
    let envelope_ok = match metric {
        ScalingMetric::AbsI => Some(
            sorted
                .iter()
                .all(|r| r.i.norm() <= UPPER_ENVELOPE * r.t_anchor.powf(0.75)),
        ),
        ScalingMetric::J => None,
    };
    Ok(ScalingFit {
        t_values: sorted.iter().map(|r| r.t_anchor).collect(),
        metric,
        slope,
        intercept,
        max_residual,
        envelope_ok,
    })
}
