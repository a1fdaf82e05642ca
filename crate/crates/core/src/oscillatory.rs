//! van der Corput's first and second derivative tests as executable bound
//! certificates, and the oscillation-aware quadrature used to check them.
//!
//! A certificate pairs a numerically computed |∫ G e^{iF}| with the analytic
//! bound (4/m or 8M/√r). Hypotheses are spot-checked on a 64-point grid
//! before any integral is computed.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate, DEFAULT_MAX_PANELS};
use crate::Complex;

/// Number of grid points used to spot-check lemma hypotheses.
pub const SPOT_CHECK_POINTS: usize = 64;

/// Relative slack granted to the spot checks (m, r, M comparisons), so that
/// hypotheses met with equality at an endpoint are accepted.
const SPOT_REL_TOL: f64 = 1e-12;

/// A real phase with analytic first and second derivatives.
pub trait Phase: Sync {
    fn value(&self, x: f64) -> f64;
    fn d1(&self, x: f64) -> f64;
    fn d2(&self, x: f64) -> f64;
}

/// F(n, t) = (t/2) log(t/(2πe n²)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseFamily {
    pub n: u64,
}

impl PhaseFamily {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("phase index n must be positive".into()));
        }
        Ok(Self { n })
    }

    /// t = 2πn², where F' vanishes.
    pub fn stationary_point(&self) -> f64 {
        let n = self.n as f64;
        2.0 * PI * n * n
    }
}

impl Phase for PhaseFamily {
    fn value(&self, t: f64) -> f64 {
        let n = self.n as f64;
        0.5 * t * ((t / (2.0 * PI * n * n)).ln() - 1.0)
    }

    fn d1(&self, t: f64) -> f64 {
        let n = self.n as f64;
        0.5 * (t / (2.0 * PI * n * n)).ln()
    }

    fn d2(&self, t: f64) -> f64 {
        0.5 / t
    }
}

/// A phase assembled from three closures.
pub struct FnPhase<F, D1, D2> {
    f: F,
    d1: D1,
    d2: D2,
}

impl<F, D1, D2> FnPhase<F, D1, D2>
where
    F: Fn(f64) -> f64 + Sync,
    D1: Fn(f64) -> f64 + Sync,
    D2: Fn(f64) -> f64 + Sync,
{
    pub fn new(f: F, d1: D1, d2: D2) -> Self {
        Self { f, d1, d2 }
    }
}

impl<F, D1, D2> Phase for FnPhase<F, D1, D2>
where
    F: Fn(f64) -> f64 + Sync,
    D1: Fn(f64) -> f64 + Sync,
    D2: Fn(f64) -> f64 + Sync,
{
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }
    fn d1(&self, x: f64) -> f64 {
        (self.d1)(x)
    }
    fn d2(&self, x: f64) -> f64 {
        (self.d2)(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscQuad {
    pub value: Complex,
    pub err: f64,
    pub evals: usize,
    /// Set when the error estimate did not reach the tolerance.
    pub accuracy_warning: bool,
}

/// Panel boundaries with width ≤ π/(|F'| + 1), i.e. at most half an
/// oscillation of e^{iF} per 15-node panel.
fn oscillation_breaks<P: Phase + ?Sized>(phase: &P, a: f64, b: f64) -> Result<Vec<f64>> {
    let mut breaks = vec![a];
    let mut x = a;
    while x < b {
        let d0 = phase.d1(x).abs();
        if !d0.is_finite() {
            return Err(Error::Evaluation { x });
        }
        let w0 = PI / (d0 + 1.0);
        let probe = (x + w0).min(b);
        let d1 = phase.d1(probe).abs();
        if !d1.is_finite() {
            return Err(Error::Evaluation { x: probe });
        }
        let w = PI / (d0.max(d1) + 1.0);
        x = if x + w >= b - 1e-12 * (b - a) { b } else { x + w };
        breaks.push(x);
    }
    Ok(breaks)
}

/// ∫_a^b G(x) e^{iF(x)} dx by adaptive Gauss–Kronrod on oscillation-capped
/// panels.
pub fn oscillatory_quad<P, G>(phase: &P, amplitude: G, a: f64, b: f64, tol: f64) -> Result<OscQuad>
where
    P: Phase + ?Sized,
    G: Fn(f64) -> f64,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Argument(format!("need finite a < b, got [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::Argument(format!("tolerance must be positive, got {tol}")));
    }
    let breaks = oscillation_breaks(phase, a, b)?;
    let f = |x: f64| Complex::from_polar(amplitude(x), phase.value(x));
    let r = integrate(&f, &breaks, tol, DEFAULT_MAX_PANELS.max(4 * breaks.len()))?;
    Ok(OscQuad {
        value: r.value,
        err: r.err,
        evals: r.evals,
        accuracy_warning: !r.converged,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    FirstDerivative,
    SecondDerivative,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub lemma: Lemma,
    pub a: f64,
    pub b: f64,
    pub numeric_integral: Complex,
    pub numeric_abs: f64,
    pub quad_err: f64,
    pub analytic_bound: f64,
    /// m for the first-derivative test, r for the second.
    pub derivative_bound: f64,
    /// M, the amplitude bound (1 for the first-derivative test).
    pub amplitude_bound: f64,
    pub slack: f64,
}

fn grid(a: f64, b: f64) -> impl Iterator<Item = f64> {
    let h = (b - a) / (SPOT_CHECK_POINTS - 1) as f64;
    (0..SPOT_CHECK_POINTS).map(move |j| if j + 1 == SPOT_CHECK_POINTS { b } else { a + h * j as f64 })
}

fn single_sign(values: &[f64]) -> bool {
    values.iter().all(|&v| v > 0.0) || values.iter().all(|&v| v < 0.0)
}

fn non_strict_sign(values: &[f64]) -> bool {
    values.iter().all(|&v| v >= 0.0) || values.iter().all(|&v| v <= 0.0)
}

fn is_monotone(values: &[f64]) -> bool {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = SPOT_REL_TOL * scale;
    values.windows(2).all(|w| w[1] >= w[0] - tol) || values.windows(2).all(|w| w[1] <= w[0] + tol)
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Argument(format!("need finite a < b, got [{a}, {b}]")));
    }
    Ok(())
}

const CERT_QUAD_TOL: f64 = 1e-8;

/// |∫_a^b e^{iF}| ≤ 4/m when F' is monotone and |F'| ≥ m > 0 on [a, b].
pub fn first_derivative_certificate<P: Phase + ?Sized>(
    phase: &P,
    a: f64,
    b: f64,
    m: f64,
) -> Result<BoundCertificate> {
    check_interval(a, b)?;
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::Argument(format!("m must be positive, got {m}")));
    }
    let d1: Vec<f64> = grid(a, b).map(|x| phase.d1(x)).collect();
    let d2: Vec<f64> = grid(a, b).map(|x| phase.d2(x)).collect();
    if !single_sign(&d1) {
        return Err(Error::precondition("F' changes sign on [a, b]"));
    }
    let min_d1 = d1.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
    if min_d1 < m * (1.0 - SPOT_REL_TOL) {
        return Err(Error::precondition(format!(
            "min |F'| = {min_d1} on the spot-check grid is below m = {m}"
        )));
    }
    if !non_strict_sign(&d2) {
        return Err(Error::precondition("F'' changes sign, so F' is not monotone"));
    }

    let q = oscillatory_quad(phase, |_| 1.0, a, b, CERT_QUAD_TOL)?;
    let numeric_abs = q.value.norm();
    let analytic_bound = 4.0 / m;
    Ok(BoundCertificate {
        lemma: Lemma::FirstDerivative,
        a,
        b,
        numeric_integral: q.value,
        numeric_abs,
        quad_err: q.err,
        analytic_bound,
        derivative_bound: m,
        amplitude_bound: 1.0,
        slack: analytic_bound - numeric_abs,
    })
}

/// |∫_a^b G e^{iF}| ≤ 8M/√r when |F''| ≥ r, |G| ≤ M and G/F' is monotone
/// on each side of any stationary point.
pub fn second_derivative_certificate<P, G>(
    phase: &P,
    amplitude: G,
    a: f64,
    b: f64,
    r: f64,
    amplitude_bound: f64,
) -> Result<BoundCertificate>
where
    P: Phase + ?Sized,
    G: Fn(f64) -> f64,
{
    check_interval(a, b)?;
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Argument(format!("r must be positive, got {r}")));
    }
    if !(amplitude_bound > 0.0) || !amplitude_bound.is_finite() {
        return Err(Error::Argument(format!("M must be positive, got {amplitude_bound}")));
    }
    let xs: Vec<f64> = grid(a, b).collect();
    let d2: Vec<f64> = xs.iter().map(|&x| phase.d2(x)).collect();
    if !single_sign(&d2) {
        return Err(Error::precondition("F'' changes sign on [a, b]"));
    }
    let min_d2 = d2.iter().fold(f64::INFINITY, |acc, v| acc.min(v.abs()));
    if min_d2 < r * (1.0 - SPOT_REL_TOL) {
        return Err(Error::precondition(format!(
            "min |F''| = {min_d2} on the spot-check grid is below r = {r}"
        )));
    }
    let g: Vec<f64> = xs.iter().map(|&x| amplitude(x)).collect();
    let max_g = g.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if max_g > amplitude_bound * (1.0 + SPOT_REL_TOL) {
        return Err(Error::precondition(format!(
            "max |G| = {max_g} on the spot-check grid exceeds M = {amplitude_bound}"
        )));
    }
    // G/F' on maximal runs of constant sign of F', skipping near-stationary
    // grid points.
    let d1: Vec<f64> = xs.iter().map(|&x| phase.d1(x)).collect();
    let d1_scale = d1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut run: Vec<f64> = Vec::new();
    let mut run_sign = 0.0;
    for (gv, dv) in g.iter().zip(&d1) {
        if dv.abs() <= 1e-9 * d1_scale.max(1e-300) {
            continue;
        }
        let sign = dv.signum();
        if sign != run_sign {
            if !is_monotone(&run) {
                return Err(Error::precondition("G/F' is not monotone"));
            }
            run.clear();
            run_sign = sign;
        }
        run.push(gv / dv);
    }
    if !is_monotone(&run) {
        return Err(Error::precondition("G/F' is not monotone"));
    }

    let q = oscillatory_quad(phase, &amplitude, a, b, CERT_QUAD_TOL)?;
    let numeric_abs = q.value.norm();
    let analytic_bound = 8.0 * amplitude_bound / r.sqrt();
    Ok(BoundCertificate {
        lemma: Lemma::SecondDerivative,
        a,
        b,
        numeric_integral: q.value,
        numeric_abs,
        quad_err: q.err,
        analytic_bound,
        derivative_bound: r,
        amplitude_bound,
        slack: analytic_bound - numeric_abs,
    })
}

/// Analytic bounds for Σ_{n≤CT/π} n^{−1/2} ∫_T^{2T} e^{iF(n,t)} dt after
/// splitting at n = 3√(T/π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSumBound {
    pub t_anchor: f64,
    pub c: f64,
    /// Last index of the second-derivative range, ⌊3√(T/π)⌋.
    pub split_n: u64,
    /// Last index of the first-derivative range, ⌊CT/π⌋.
    pub cutoff_n: u64,
    pub sum1_bound: f64,
    pub sum2_bound: f64,
    pub total: f64,
    /// Closed-form c₁ with sum1_bound ≤ c₁ T^{3/4}.
    pub c1: f64,
    /// Closed-form c₂ with sum2_bound ≤ c₂ √C T^{1/2}.
    pub c2: f64,
    pub ratio_t34: f64,
}

fn inv_sqrt_sum(from: u64, to: u64) -> f64 {
    (from..=to).map(|n| 1.0 / (n as f64).sqrt()).sum()
}

/// Per-term van der Corput bounds: Lemma 2 with r = 1/(4T), M = 1 for
/// n ≤ 3√(T/π) (each term ≤ 8·2√T), Lemma 1 with m = 4/9 above (each ≤ 9).
pub fn split_sum_bound(t_anchor: f64, c: f64) -> Result<SplitSumBound> {
    if !(t_anchor >= 100.0) || !t_anchor.is_finite() {
        return Err(Error::precondition(format!("T must be >= 100, got {t_anchor}")));
    }
    if !(c > 1.0) || !c.is_finite() {
        return Err(Error::precondition(format!("C must exceed 1, got {c}")));
    }
    let split_n = (3.0 * (t_anchor / PI).sqrt()).floor() as u64;
    let cutoff_n = (c * t_anchor / PI).floor() as u64;
    let r = 1.0 / (4.0 * t_anchor);
    let per_term1 = 8.0 / r.sqrt();
    let sum1_bound = per_term1 * inv_sqrt_sum(1, split_n);
    let per_term2 = 4.0 / (4.0 / 9.0);
    let sum2_bound = if cutoff_n > split_n {
        per_term2 * inv_sqrt_sum(split_n + 1, cutoff_n)
    } else {
        0.0
    };
    let total = sum1_bound + sum2_bound;
    // Σ_{n≤N} n^{−1/2} ≤ 2√N
    let c1 = 32.0 * 3f64.sqrt() / PI.powf(0.25);
    let c2 = 18.0 / PI.sqrt();
    Ok(SplitSumBound {
        t_anchor,
        c,
        split_n,
        cutoff_n,
        sum1_bound,
        sum2_bound,
        total,
        c1,
        c2,
        ratio_t34: total / t_anchor.powf(0.75),
    })
}

/// Checks log(n/m) ≥ (n − m)/n for n > m ≥ 1.
pub fn log_inequality_check(n: u64, m: u64) -> Result<bool> {
    if m < 1 || n <= m {
        return Err(Error::Argument(format!("need n > m >= 1, got n = {n}, m = {m}")));
    }
    let gap = (n - m) as f64;
    let lhs = (gap / m as f64).ln_1p();
    Ok(lhs >= gap / n as f64)
}

/// log(2πn²/t), which exceeds 8/9 for t ≤ 2T and n > 3√(T/π).
pub fn split_phase_gap(t: f64, n: u64) -> f64 {
    let n = n as f64;
    (2.0 * PI * n * n / t).ln()
}

/// One row of the randomized certificate suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateTrial {
    pub index: usize,
    pub lemma: Lemma,
    pub n: u64,
    pub a: f64,
    pub b: f64,
    pub derivative_bound: f64,
    pub amplitude_bound: f64,
    pub outcome: std::result::Result<BoundCertificate, String>,
}

/// How trial parameters are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SuiteMode {
    /// Parameters satisfy the hypotheses; draws that fail the spot check are
    /// redrawn.
    Valid,
    /// Every third trial inflates m or r past its true value.
    Adversarial,
}

const RANGE_LO: f64 = 1e2;
const RANGE_HI: f64 = 1e5;

fn draw_interval(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let a = (RANGE_LO.ln() + rng.gen::<f64>() * ((RANGE_HI / 2.0).ln() - RANGE_LO.ln())).exp();
    let b = (a * (1.0 + rng.gen_range(0.05..1.0))).min(RANGE_HI);
    (a, b)
}

fn amplitude_for(kind: u8) -> impl Fn(f64) -> f64 {
    move |t: f64| if kind == 0 { 1.0 } else { (t / (2.0 * PI)).powf(0.25) }
}

/// Randomized certificate suite over the phase family, deterministic in
/// `seed`. Lemmas alternate between trials.
pub fn certificate_suite(trials: usize, seed: u64, mode: SuiteMode) -> Vec<CertificateTrial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for index in 0..trials {
        let lemma = if index % 2 == 0 {
            Lemma::FirstDerivative
        } else {
            Lemma::SecondDerivative
        };
        let inflate = mode == SuiteMode::Adversarial && index % 3 == 2;
        let mut attempts = 0;
        loop {
            attempts += 1;
            let n: u64 = rng.gen_range(1..=100);
            let phase = PhaseFamily { n };
            let (a, b) = draw_interval(&mut rng);
            let (trial, redraw) = match lemma {
                Lemma::FirstDerivative => {
                    let stat = phase.stationary_point();
                    if stat >= a * 0.95 && stat <= b * 1.05 {
                        (None, true)
                    } else {
                        let m_true = phase.d1(a).abs().min(phase.d1(b).abs());
                        let m = if inflate { m_true * 1.5 } else { m_true };
                        let outcome = first_derivative_certificate(&phase, a, b, m);
                        let redraw = !inflate && outcome.is_err();
                        (Some((m, 1.0, outcome)), redraw)
                    }
                }
                Lemma::SecondDerivative => {
                    let kind: u8 = rng.gen_range(0..2);
                    let amp = amplitude_for(kind);
                    let r_true = phase.d2(b);
                    let r = if inflate { r_true * 1.5 } else { r_true };
                    let m_amp = amp(b);
                    let outcome = second_derivative_certificate(&phase, &amp, a, b, r, m_amp);
                    let redraw = !inflate && outcome.is_err();
                    (Some((r, m_amp, outcome)), redraw)
                }
            };
            if redraw && attempts < 1000 {
                continue;
            }
            let (derivative_bound, amplitude_bound, outcome) =
                trial.unwrap_or((f64::NAN, f64::NAN, Err(Error::precondition("no valid draw"))));
            out.push(CertificateTrial {
                index,
                lemma,
                n,
                a,
                b,
                derivative_bound,
                amplitude_bound,
                outcome: outcome.map_err(|e| e.to_string()),
            });
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_identities() {
        for n in [1u64, 7, 100, 1000] {
            let p = PhaseFamily::new(n).unwrap();
            assert!(p.d1(p.stationary_point()).abs() < 1e-12);
            for t in [10.0, 1e3, 1e5] {
                let h = 1e-3 * t;
                let fd2 = (p.d1(t + h) - p.d1(t - h)) / (2.0 * h);
                assert!(((fd2 - p.d2(t)) / p.d2(t)).abs() < 1e-6);
                let fd1 = (p.value(t + h) - p.value(t - h)) / (2.0 * h);
                assert!((fd1 - p.d1(t)).abs() < 1e-6 * p.d1(t).abs().max(1.0));
            }
        }
        assert!(PhaseFamily::new(0).is_err());
    }

    #[test]
    fn quad_constant_and_full_period() {
        let zero = FnPhase::new(|_| 0.0, |_| 0.0, |_| 0.0);
        let q = oscillatory_quad(&zero, |_| 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert!((q.value - Complex::new(1.0, 0.0)).norm() < 1e-12);
        let lin = FnPhase::new(|x| x, |_| 1.0, |_| 0.0);
        let q = oscillatory_quad(&lin, |_| 1.0, 0.0, 2.0 * PI, 1e-12).unwrap();
        assert!(q.value.norm() < 1e-10);
        assert!(!q.accuracy_warning);
    }

    #[test]
    fn quad_errors() {
        let lin = FnPhase::new(|x| x, |_| 1.0, |_| 0.0);
        assert!(oscillatory_quad(&lin, |_| 1.0, 1.0, 1.0, 1e-8).is_err());
        assert!(oscillatory_quad(&lin, |_| 1.0, 0.0, 1.0, 0.0).is_err());
        let bad = FnPhase::new(|x: f64| x.ln(), |x: f64| 1.0 / x, |x: f64| -1.0 / (x * x));
        assert!(matches!(
            oscillatory_quad(&bad, |x: f64| 1.0 / x, -1.0, 1.0, 1e-8),
            Err(Error::Evaluation { .. })
        ));
    }

    #[test]
    fn first_derivative_closed_form() {
        let t = 10.0;
        let phase = FnPhase::new(move |x| t * x, move |_| t, |_| 0.0);
        let cert = first_derivative_certificate(&phase, 0.0, 1.0, 10.0).unwrap();
        let exact = ((Complex::new(0.0, 10.0)).exp() - 1.0) / Complex::new(0.0, 10.0);
        assert!((cert.numeric_abs - exact.norm()).abs() < 1e-10);
        assert!((cert.analytic_bound - 0.4).abs() < 1e-15);
        assert!(cert.slack >= 0.0);
        assert!(matches!(
            first_derivative_certificate(&phase, 0.0, 1.0, 11.0),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn first_derivative_rejects_sign_change() {
        let p = PhaseFamily { n: 1 };
        let stat = p.stationary_point();
        assert!(matches!(
            first_derivative_certificate(&p, stat - 1.0, stat + 1.0, 1e-6),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn second_derivative_fresnel() {
        let phase = FnPhase::new(|x| 0.5 * x * x, |x| x, |_| 1.0);
        let cert = second_derivative_certificate(&phase, |_| 1.0, -1.0, 1.0, 1.0, 1.0).unwrap();
        assert!((cert.numeric_abs - 1.97).abs() < 0.01, "{}", cert.numeric_abs);
        assert_eq!(cert.analytic_bound, 8.0);
    }

    #[test]
    fn second_derivative_guards() {
        let p = PhaseFamily { n: 1 };
        let (a, b) = (1000.0, 2000.0);
        let err = second_derivative_certificate(&p, |_| 1.0, a, b, 1.0 / (2.0 * a) * 1.01, 1.0);
        assert!(matches!(err, Err(Error::Precondition { .. })));
        let err = second_derivative_certificate(&p, |_| 2.0, a, b, 1.0 / (4.0 * a), 1.0);
        assert!(matches!(err, Err(Error::Precondition { .. })));
    }

    #[test]
    fn log_inequality() {
        assert!(log_inequality_check(2, 1).unwrap());
        assert!(log_inequality_check(1_000_000, 999_999).unwrap());
        assert!(log_inequality_check(1, 1).is_err());
        assert!(log_inequality_check(3, 0).is_err());
        let t_anchor = 1e4;
        let n = (3.0 * (t_anchor / PI).sqrt()).ceil() as u64;
        assert!(split_phase_gap(2.0 * t_anchor, n) >= 8.0 / 9.0);
    }

    #[test]
    fn split_sum_degenerate_c() {
        let b = split_sum_bound(1e4, 1.0 + 1e-9).unwrap();
        assert!(b.total.is_finite() && b.sum2_bound >= 0.0);
        assert!(split_sum_bound(50.0, 4.0).is_err());
        assert!(split_sum_bound(1e3, 1.0).is_err());
    }

    #[test]
    fn suite_is_seeded() {
        let a = certificate_suite(4, 7, SuiteMode::Valid);
        let b = certificate_suite(4, 7, SuiteMode::Valid);
        assert_eq!(a, b);
        assert!(a.iter().all(|t| t.outcome.is_ok()));
    }

    #[test]
    fn adversarial_rows_are_flagged() {
        let rows = certificate_suite(6, 3, SuiteMode::Adversarial);
        for row in &rows {
            if row.index % 3 == 2 {
                assert!(row.outcome.is_err(), "row {} should violate", row.index);
            } else {
                assert!(row.outcome.is_ok());
            }
        }
    }
}
