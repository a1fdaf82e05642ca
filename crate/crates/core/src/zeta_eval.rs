//! Evaluators for ζ(s) in the half-plane σ > 0.
//!
//! * [`zeta_em`] — Euler–Maclaurin summation with an explicit remainder
//!   bound; the in-repo reference.
//! * [`zeta_first_approx`] — Σ_{n≤x} n^{−s} + x^{1−s}/(s−1), valid for
//!   |t| < 2πx/C with an O(x^{−σ}) error.
//! * [`zeta_euler_product`] — truncated Euler product for σ > 1.
//! * [`convexity_check`] — samples |ζ(σ+it)| against t^{(1−σ)/2}(log t)⁵.

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_fns::{ComplexPoint, BERNOULLI_EVEN};
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZetaMethod {
    EulerMaclaurin,
    DirichletPoly,
    EulerProduct,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaValue {
    pub s: ComplexPoint,
    pub value: Complex,
    pub method: ZetaMethod,
    pub err_bound: f64,
    pub terms_used: usize,
}

/// How the cutoff x of the first approximation is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum XRule {
    /// x = max(C·|t|/π, 1): the evaluation height is its own anchor.
    FromHeight,
    /// x = C·T/π for a fixed anchor T, intended for t ∈ [T, 2T).
    FromAnchor(f64),
    Fixed(f64),
}

impl XRule {
    pub fn cutoff(&self, t: f64, c: f64) -> f64 {
        match *self {
            XRule::FromHeight => (c * t.abs() / PI).max(1.0),
            XRule::FromAnchor(anchor) => c * anchor / PI,
            XRule::Fixed(x) => x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxConfig {
    /// Validity constant C > 1 in |t| < 2πx/C.
    pub c: f64,
    pub x_rule: XRule,
    /// Absolute target for Euler–Maclaurin cross-checks.
    pub em_error_target: f64,
    /// K in the reported budget K·x^{−σ}.
    pub error_constant: f64,
}

impl Default for ApproxConfig {
    fn default() -> Self {
        Self {
            c: 4.0,
            x_rule: XRule::FromHeight,
            em_error_target: 1e-10,
            error_constant: 2.0,
        }
    }
}

impl ApproxConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 1.0) || !self.c.is_finite() {
            return Err(Error::Argument(format!("C must exceed 1, got {}", self.c)));
        }
        if !(self.em_error_target > 0.0) {
            return Err(Error::Argument("em_error_target must be positive".into()));
        }
        if !(self.error_constant > 0.0) {
            return Err(Error::Argument("error_constant must be positive".into()));
        }
        match self.x_rule {
            XRule::FromAnchor(v) | XRule::Fixed(v) if !(v > 0.0 && v.is_finite()) => {
                Err(Error::Argument(format!("cutoff parameter must be positive, got {v}")))
            }
            _ => Ok(()),
        }
    }
}

const LN_TABLE_SIZE: usize = 1 << 20;

fn ln_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (0..LN_TABLE_SIZE).map(|n| (n.max(1) as f64).ln()).collect())
}

#[inline]
pub(crate) fn ln_n(n: usize) -> f64 {
    if n < LN_TABLE_SIZE {
        ln_table()[n]
    } else {
        (n as f64).ln()
    }
}

/// Σ_{n=1}^{n_max} n^{−σ−it}.
pub fn dirichlet_sum(sigma: f64, t: f64, n_max: usize) -> Complex {
    let mut re = 0.0;
    let mut im = 0.0;
    if sigma == 0.5 {
        for n in 1..=n_max {
            let l = ln_n(n);
            let (sin, cos) = (t * l).sin_cos();
            let w = 1.0 / (n as f64).sqrt();
            re += w * cos;
            im -= w * sin;
        }
    } else {
        for n in 1..=n_max {
            let l = ln_n(n);
            let (sin, cos) = (t * l).sin_cos();
            let w = (-sigma * l).exp();
            re += w * cos;
            im -= w * sin;
        }
    }
    Complex::new(re, im)
}

/// Statistical estimate of the rounding error of `dirichlet_sum`: each phase
/// t·log n carries a relative error of a few ulps.
fn dirichlet_rounding(sigma: f64, t: f64, n_max: usize) -> f64 {
    let n = n_max.max(1) as f64;
    let weight_sq = if (2.0 * sigma - 1.0).abs() < 1e-12 {
        n.ln() + 1.0
    } else {
        (1.0 + (n.powf(1.0 - 2.0 * sigma) - 1.0) / (1.0 - 2.0 * sigma)).max(1.0)
    };
    4.0 * f64::EPSILON * (t.abs() * n.ln() + 1.0) * weight_sq.sqrt()
}

/// (N, M): N−1 direct terms and M Bernoulli corrections.
struct EmPlan {
    n: usize,
    m: usize,
    remainder: f64,
}

/// Magnitudes |T_k| of the Euler–Maclaurin correction terms at cutoff N,
/// T_k = B_{2k}/(2k)! · s(s+1)…(s+2k−2) · N^{−s−2k+1}.
fn em_remainder(s: Complex, n: f64, max_m: usize) -> (usize, f64) {
    let sigma = s.re;
    let base = n.powf(-sigma);
    // running |s(s+1)…(s+2k−2)| / (2k)!
    let mut poch = s.norm() / 2.0;
    let mut best = (0, f64::INFINITY);
    for k in 1..=max_m + 1 {
        if k > 1 {
            let j = (2 * k - 3) as f64;
            poch *= (s + j).norm() * (s + j + 1.0).norm() / ((2 * k - 1) as f64 * (2 * k) as f64);
        }
        let term = BERNOULLI_EVEN[k - 1].abs() * poch * base * n.powi(1 - 2 * k as i32);
        // Remainder after M = k − 1 corrections is bounded by
        // |s + 2M + 1| / (σ + 2M + 1) · |T_{M+1}|.
        let m = k - 1;
        let factor = (s + (2 * m + 1) as f64).norm() / (sigma + (2 * m + 1) as f64);
        let bound = factor * term;
        if bound < best.1 {
            best = (m, bound);
        }
    }
    best
}

fn plan_em(s: Complex, target: f64) -> EmPlan {
    let max_m = BERNOULLI_EVEN.len() - 1;
    let mut n = (0.25 * s.im.abs()).max(10.0).ceil();
    loop {
        let (m, remainder) = em_remainder(s, n, max_m);
        if remainder <= 0.5 * target {
            return EmPlan {
                n: n as usize,
                m,
                remainder,
            };
        }
        n = (n * 1.15).ceil();
    }
}

/// Reference evaluation of ζ(s) for σ > 0 by Euler–Maclaurin summation.
///
/// `err_bound` is the analytic remainder bound plus a rounding estimate; the
/// latter dominates above t ≈ 10⁴ and can exceed `error_target` there.
pub fn zeta_em(s: ComplexPoint, error_target: f64) -> Result<ZetaValue> {
    let s = s.check_finite()?;
    if !(error_target > 0.0) {
        return Err(Error::Argument("error_target must be positive".into()));
    }
    if s.sigma == 1.0 && s.t == 0.0 {
        return Err(Error::Pole);
    }
    if s.sigma <= 0.0 {
        return Err(Error::OutOfRegion(format!(
            "zeta_em requires sigma > 0, got {}",
            s.sigma
        )));
    }
    let z = s.to_complex();
    let plan = plan_em(z, error_target);
    let n = plan.n as f64;

    let mut value = dirichlet_sum(s.sigma, s.t, plan.n - 1);
    let n_pow = (-z * n.ln()).exp(); // N^{−s}
    value += n_pow * n / (z - 1.0) + 0.5 * n_pow;

    let mut poch = z / 2.0; // s/(2!) accumulates s(s+1)…(s+2k−2)/(2k)!
    let inv_n2 = 1.0 / (n * n);
    let mut n_factor = n_pow / n; // N^{−s−1}
    for k in 1..=plan.m {
        if k > 1 {
            let j = (2 * k - 3) as f64;
            poch = poch * (z + j) * (z + j + 1.0) / ((2 * k - 1) as f64 * (2 * k) as f64);
            n_factor *= inv_n2;
        }
        value += poch * n_factor * BERNOULLI_EVEN[k - 1];
    }

    let rounding = dirichlet_rounding(s.sigma, s.t, plan.n);
    Ok(ZetaValue {
        s,
        value,
        method: ZetaMethod::EulerMaclaurin,
        err_bound: plan.remainder + rounding + f64::EPSILON * value.norm(),
        terms_used: plan.n - 1 + plan.m,
    })
}

/// First approximation ζ(s) ≈ Σ_{n≤x} n^{−s} + x^{1−s}/(s−1).
pub fn zeta_first_approx(s: ComplexPoint, cfg: &ApproxConfig) -> Result<ZetaValue> {
    let s = s.check_finite()?;
    cfg.validate()?;
    if s.sigma <= 0.0 {
        return Err(Error::OutOfRegion(format!(
            "first approximation requires sigma > 0, got {}",
            s.sigma
        )));
    }
    if s.sigma == 1.0 && s.t == 0.0 {
        return Err(Error::Pole);
    }
    let x = cfg.x_rule.cutoff(s.t, cfg.c);
    let max_t = 2.0 * PI * x / cfg.c;
    if !(s.t.abs() < max_t) || x < 1.0 {
        return Err(Error::Precondition {
            message: format!(
                "|t| = {} violates |t| < 2*pi*x/C = {max_t} (x = {x}, C = {})",
                s.t.abs(),
                cfg.c
            ),
            max_t: Some(max_t),
        });
    }
    let n_max = x.floor() as usize;
    let z = s.to_complex();
    let mut value = dirichlet_sum(s.sigma, s.t, n_max);
    value += ((1.0 - z) * x.ln()).exp() / (z - 1.0);
    Ok(ZetaValue {
        s,
        value,
        method: ZetaMethod::DirichletPoly,
        err_bound: cfg.error_constant * x.powf(-s.sigma),
        terms_used: n_max.max(1),
    })
}

fn primes_up_to(limit: usize) -> Arc<Vec<u32>> {
    static CACHE: OnceLock<RwLock<(usize, Arc<Vec<u32>>)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new((0, Arc::new(Vec::new()))));
    {
        let guard = cache.read().expect("prime cache poisoned");
        if guard.0 >= limit {
            return guard.1.clone();
        }
    }
    let mut guard = cache.write().expect("prime cache poisoned");
    if guard.0 < limit {
        let bound = limit.max(2 * guard.0);
        let mut composite = vec![false; bound + 1];
        let mut primes = Vec::new();
        for p in 2..=bound {
            if !composite[p] {
                primes.push(p as u32);
                let mut q = p * p;
                while q <= bound {
                    composite[q] = true;
                    q += p;
                }
            }
        }
        *guard = (bound, Arc::new(primes));
    }
    guard.1.clone()
}

/// Truncated Euler product Π_{p ≤ cutoff} (1 − p^{−s})^{−1}, σ > 1.
pub fn zeta_euler_product(s: ComplexPoint, prime_cutoff: usize) -> Result<ZetaValue> {
    let s = s.check_finite()?;
    if s.sigma <= 1.0 {
        return Err(Error::OutOfRegion(format!(
            "Euler product requires sigma > 1, got {}",
            s.sigma
        )));
    }
    if prime_cutoff < 2 {
        return Err(Error::Argument("prime cutoff must be at least 2".into()));
    }
    let primes = primes_up_to(prime_cutoff);
    let z = s.to_complex();
    let mut value = Complex::new(1.0, 0.0);
    let mut count = 0;
    for &p in primes.iter().take_while(|&&p| p as usize <= prime_cutoff) {
        let pf = p as f64;
        value /= 1.0 - (-z * pf.ln()).exp();
        count += 1;
    }
    // |log ζ − log partial| ≤ 2 Σ_{n>P} n^{−σ} ≤ 2 P^{1−σ}/(σ−1)
    let p = prime_cutoff as f64;
    let tau = 2.0 * p.powf(1.0 - s.sigma) / (s.sigma - 1.0);
    Ok(ZetaValue {
        s,
        value,
        method: ZetaMethod::EulerProduct,
        err_bound: value.norm() * tau.exp_m1() + 8.0 * f64::EPSILON * count as f64,
        terms_used: count.max(1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityEntry {
    pub sigma: f64,
    pub t: f64,
    pub zeta_abs: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexityReport {
    pub max_ratio: f64,
    pub argmax: ComplexPoint,
    pub entries: Vec<ConvexityEntry>,
}

/// Ratio |ζ(σ+it)| / (t^{(1−σ)/2} (log t)⁵) over the product grid.
pub fn convexity_check(t_grid: &[f64], sigma_grid: &[f64]) -> Result<ConvexityReport> {
    if t_grid.is_empty() || sigma_grid.is_empty() {
        return Err(Error::Argument("grids must be nonempty".into()));
    }
    if let Some(t) = t_grid.iter().find(|&&t| !(t >= 10.0)) {
        return Err(Error::Argument(format!("all heights must be >= 10, got {t}")));
    }
    if let Some(s) = sigma_grid.iter().find(|&&s| !(s > 0.0 && s <= 1.0)) {
        return Err(Error::Argument(format!("sigma must lie in (0, 1], got {s}")));
    }
    let mut entries = Vec::with_capacity(t_grid.len() * sigma_grid.len());
    for &sigma in sigma_grid {
        for &t in t_grid {
            let z = zeta_em(ComplexPoint::new(sigma, t)?, 1e-8)?;
            let envelope = t.powf(0.5 * (1.0 - sigma)) * t.ln().powi(5);
            let zeta_abs = z.value.norm();
            entries.push(ConvexityEntry {
                sigma,
                t,
                zeta_abs,
                ratio: zeta_abs / envelope,
            });
        }
    }
    let best = entries
        .iter()
        .max_by(|a, b| a.ratio.total_cmp(&b.ratio))
        .expect("entries nonempty");
    Ok(ConvexityReport {
        max_ratio: best.ratio,
        argmax: ComplexPoint {
            sigma: best.sigma,
            t: best.t,
        },
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA2: f64 = PI * PI / 6.0;

    fn pt(sigma: f64, t: f64) -> ComplexPoint {
        ComplexPoint::new(sigma, t).unwrap()
    }

    #[test]
    fn em_at_two() {
        let z = zeta_em(pt(2.0, 0.0), 1e-10).unwrap();
        assert!((z.value.re - ZETA2).abs() < 1e-10);
        assert!(z.value.im.abs() < 1e-15);
        assert!(z.err_bound > 0.0 && z.err_bound <= 1e-10);
        assert!(z.terms_used >= 1);
    }

    #[test]
    fn em_errors() {
        assert_eq!(zeta_em(pt(1.0, 0.0), 1e-10).unwrap_err(), Error::Pole);
        assert!(matches!(zeta_em(pt(0.0, 5.0), 1e-10), Err(Error::OutOfRegion(_))));
        assert!(matches!(zeta_em(pt(-1.0, 5.0), 1e-10), Err(Error::OutOfRegion(_))));
    }

    #[test]
    fn em_near_one_is_finite() {
        let z = zeta_em(pt(1.0, 1e-3), 1e-10).unwrap();
        // ζ(s) ≈ 1/(s−1) + γ
        let expect = Complex::new(0.0, 1e-3).inv() + 0.577_215_664_901_532_9;
        assert!((z.value - expect).norm() < 1e-4);
    }

    #[test]
    fn first_approx_precondition_carries_max_t() {
        let cfg = ApproxConfig {
            x_rule: XRule::Fixed(500.0),
            ..ApproxConfig::default()
        };
        match zeta_first_approx(pt(0.5, 1000.0), &cfg) {
            Err(Error::Precondition { max_t: Some(m), .. }) => {
                assert!((m - 2.0 * PI * 500.0 / 4.0).abs() < 1e-9)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn first_approx_rejects_bad_config() {
        let cfg = ApproxConfig {
            c: 1.0,
            ..ApproxConfig::default()
        };
        assert!(matches!(zeta_first_approx(pt(0.5, 10.0), &cfg), Err(Error::Argument(_))));
        let cfg = ApproxConfig {
            em_error_target: 0.0,
            ..ApproxConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn first_approx_at_two_fixed_cutoff() {
        let cfg = ApproxConfig {
            x_rule: XRule::Fixed(1e6),
            ..ApproxConfig::default()
        };
        let z = zeta_first_approx(pt(2.0, 0.0), &cfg).unwrap();
        assert!((z.value.re - ZETA2).abs() < 1e-5);
        assert_eq!(z.method, ZetaMethod::DirichletPoly);
    }

    #[test]
    fn euler_product_values() {
        let z = zeta_euler_product(pt(2.0, 0.0), 100_000).unwrap();
        assert!((z.value.re - ZETA2).abs() < 1e-5);
        assert!(matches!(
            zeta_euler_product(pt(0.5, 10.0), 1000),
            Err(Error::OutOfRegion(_))
        ));
        assert!(matches!(
            zeta_euler_product(pt(1.0, 10.0), 1000),
            Err(Error::OutOfRegion(_))
        ));
    }

    #[test]
    fn euler_product_matches_em_at_three() {
        let p = zeta_euler_product(pt(3.0, 0.0), 10_000).unwrap();
        let e = zeta_em(pt(3.0, 0.0), 1e-12).unwrap();
        assert!((p.value - e.value).norm() < 1e-8);
    }

    #[test]
    fn convexity_single_point_and_errors() {
        let r = convexity_check(&[100.0], &[0.5]).unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.argmax, pt(0.5, 100.0));
        assert!(convexity_check(&[], &[0.5]).is_err());
        assert!(convexity_check(&[100.0], &[]).is_err());
        assert!(convexity_check(&[5.0], &[0.5]).is_err());
        assert!(convexity_check(&[50.0], &[0.0]).is_err());
    }

    #[test]
    fn dirichlet_sum_small_case() {
        // 1 + 2^{-2} + 3^{-2}
        let v = dirichlet_sum(2.0, 0.0, 3);
        assert!((v.re - (1.0 + 0.25 + 1.0 / 9.0)).abs() < 1e-15);
    }
}
