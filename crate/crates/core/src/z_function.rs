//! Hardy's Z(t) = χ(1/2+it)^{−1/2} ζ(1/2+it) by three routes.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special_fns::{theta, ComplexPoint};
use crate::zeta_eval::{dirichlet_sum, ln_n, zeta_em, ApproxConfig, XRule};
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZMethod {
    Definition,
    RiemannSiegel,
    DirichletPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZEvaluation {
    pub t: f64,
    pub z: f64,
    pub method: ZMethod,
    pub err_bound: f64,
    /// |Im(e^{iθ}ζ)| before it is discarded; zero for the other routes.
    pub imag_residual: f64,
}

/// Default κ in the Riemann–Siegel budget κ·t^{−1/4}.
pub const DEFAULT_RS_KAPPA: f64 = 1.0;

/// O-constants of the anchored Dirichlet-polynomial budget a·√T/t + b/√T.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirichletBudget {
    pub a: f64,
    pub b: f64,
}

impl Default for DirichletBudget {
    fn default() -> Self {
        Self { a: 2.0, b: 2.0 }
    }
}

/// Relative margin keeping t strictly below the top of the anchored window.
pub const WINDOW_EPS: f64 = 1e-12;

/// Z(t) = Re(e^{iθ(t)} ζ(1/2+it)) with ζ from Euler–Maclaurin.
pub fn z_definition(t: f64, error_target: f64) -> Result<ZEvaluation> {
    if !t.is_finite() || t < 1.0 {
        return Err(Error::domain(format!("z_definition requires t >= 1, got {t}")));
    }
    let th = theta(t)?;
    let zeta = zeta_em(ComplexPoint::critical(t)?, error_target)?;
    let w = Complex::from_polar(1.0, th.theta) * zeta.value;
    let mag = zeta.value.norm();
    // phase error from θ itself and from reducing a large angle in cis
    let phase_err = th.err_bound + 2.0 * f64::EPSILON * th.theta.abs();
    Ok(ZEvaluation {
        t,
        z: w.re,
        method: ZMethod::Definition,
        err_bound: zeta.err_bound + phase_err * mag,
        imag_residual: w.im.abs(),
    })
}

/// Number of terms n ≤ √(t/2π), cutoff inclusive.
pub fn riemann_siegel_cutoff(t: f64) -> usize {
    let r = (t / (2.0 * PI)).sqrt();
    // an exact integer root must survive the rounding of t/2π
    (r * (1.0 + 4.0 * f64::EPSILON)).floor() as usize
}

/// Main sum 2 Σ_{n≤√(t/2π)} n^{−1/2} cos(t log(√(t/2π)/n) − t/2 − π/8) with
/// budget κ·t^{−1/4}.
pub fn z_riemann_siegel_with(t: f64, kappa: f64) -> Result<ZEvaluation> {
    if !t.is_finite() || t < 2.0 * PI {
        return Err(Error::domain(format!(
            "Riemann-Siegel sum requires t >= 2*pi, got {t}"
        )));
    }
    if !(kappa > 0.0) {
        return Err(Error::Argument(format!("kappa must be positive, got {kappa}")));
    }
    let n_max = riemann_siegel_cutoff(t).max(1);
    let base = 0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0;
    let sum: f64 = (1..=n_max)
        .map(|n| (base - t * ln_n(n)).cos() / (n as f64).sqrt())
        .sum();
    Ok(ZEvaluation {
        t,
        z: 2.0 * sum,
        method: ZMethod::RiemannSiegel,
        err_bound: kappa * t.powf(-0.25),
        imag_residual: 0.0,
    })
}

pub fn z_riemann_siegel(t: f64) -> Result<ZEvaluation> {
    z_riemann_siegel_with(t, DEFAULT_RS_KAPPA)
}

fn check_window(t: f64, t_anchor: f64) -> Result<()> {
    if !(t_anchor >= 10.0) || !t_anchor.is_finite() {
        return Err(Error::precondition(format!(
            "anchor T must be >= 10, got {t_anchor}"
        )));
    }
    let top = 2.0 * t_anchor * (1.0 - WINDOW_EPS);
    if !(t >= t_anchor && t <= top) {
        return Err(Error::Precondition {
            message: format!("t = {t} outside the anchored window [{t_anchor}, 2*{t_anchor})"),
            max_t: Some(top),
        });
    }
    Ok(())
}

/// Z(t) ≈ Re(e^{iθ(t)} Σ_{n≤x} n^{−1/2−it}), x from `cfg.x_rule` (normally
/// x = C·T/π for the window anchor T).
pub fn z_dirichlet_with(
    t: f64,
    cfg: &ApproxConfig,
    t_anchor: f64,
    budget: DirichletBudget,
) -> Result<ZEvaluation> {
    cfg.validate()?;
    check_window(t, t_anchor)?;
    let x = match cfg.x_rule {
        XRule::FromHeight => XRule::FromAnchor(t_anchor).cutoff(t, cfg.c),
        rule => rule.cutoff(t, cfg.c),
    };
    let max_t = 2.0 * PI * x / cfg.c;
    if !(t < max_t) {
        return Err(Error::Precondition {
            message: format!("t = {t} violates t < 2*pi*x/C = {max_t}"),
            max_t: Some(max_t),
        });
    }
    let th = theta(t)?;
    let sum = dirichlet_sum(0.5, t, x.floor() as usize);
    let w = Complex::from_polar(1.0, th.theta) * sum;
    Ok(ZEvaluation {
        t,
        z: w.re,
        method: ZMethod::DirichletPoly,
        err_bound: budget.a * t_anchor.sqrt() / t + budget.b / t_anchor.sqrt(),
        imag_residual: 0.0,
    })
}

pub fn z_dirichlet(t: f64, cfg: &ApproxConfig, t_anchor: f64) -> Result<ZEvaluation> {
    z_dirichlet_with(t, cfg, t_anchor, DirichletBudget::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definition_domain() {
        assert!(matches!(z_definition(0.5, 1e-10), Err(Error::Domain(_))));
        assert!(z_definition(1.0, 1e-10).is_ok());
    }

    #[test]
    fn riemann_siegel_domain_and_cutoff() {
        assert!(matches!(z_riemann_siegel(6.0), Err(Error::Domain(_))));
        assert!(z_riemann_siegel(2.0 * PI).is_ok());
        assert_eq!(riemann_siegel_cutoff(2.0 * PI * 4.0), 2);
        assert_eq!(riemann_siegel_cutoff(2.0 * PI * 4.0 - 1e-6), 1);
        assert_eq!(riemann_siegel_cutoff(2.0 * PI * 9.0), 3);
        let z = z_riemann_siegel(2.0 * PI * 4.0).unwrap();
        assert!(z.z.is_finite());
        assert!((z.err_bound - (8.0 * PI).powf(-0.25)).abs() < 1e-15);
    }

    #[test]
    fn dirichlet_window() {
        let cfg = ApproxConfig::default();
        assert!(z_dirichlet(1000.0, &cfg, 1000.0).is_ok());
        assert!(matches!(
            z_dirichlet(2500.0, &cfg, 1000.0),
            Err(Error::Precondition { .. })
        ));
        assert!(matches!(
            z_dirichlet(999.0, &cfg, 1000.0),
            Err(Error::Precondition { .. })
        ));
        assert!(z_dirichlet(2000.0, &cfg, 1000.0).is_err());
        assert!(z_dirichlet(15.0, &cfg, 9.0).is_err());
    }
}
