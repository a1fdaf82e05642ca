//! Complex log-Gamma, the functional-equation factor χ(s) and the
//! Riemann–Siegel theta function.
//!
//! Everything here is built on one Stirling series. log Γ is evaluated after
//! shifting the argument upward until |z| ≥ 10, so the imaginary part is the
//! continuous argument produced by the series plus principal logarithms of
//! the shift factors, never a reduction mod 2π.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex;

/// Even-index Bernoulli numbers B₂, B₄, …, B₃₀.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Truncation threshold of the asymptotic series.
const SERIES_CUTOFF: f64 = 1e-14;

/// Stirling's series is applied only once |z| reaches this radius.
const STIRLING_RADIUS: f64 = 10.0;

/// Below this height `theta` falls back to the shifted log-Gamma route.
pub const THETA_ASYMPTOTIC_FLOOR: f64 = 10.0;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// A point s = σ + it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    /// Rejects NaN and infinite coordinates.
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(Error::domain(format!("non-finite point {sigma} + {t}i")));
        }
        Ok(Self { sigma, t })
    }

    pub fn critical(t: f64) -> Result<Self> {
        Self::new(0.5, t)
    }

    pub fn from_complex(z: Complex) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn to_complex(self) -> Complex {
        Complex::new(self.sigma, self.t)
    }

    pub fn conj(self) -> Self {
        Self {
            sigma: self.sigma,
            t: -self.t,
        }
    }

    /// The reflected point 1 − s.
    pub fn reflect(self) -> Self {
        Self {
            sigma: 1.0 - self.sigma,
            t: -self.t,
        }
    }

    pub(crate) fn check_finite(self) -> Result<Self> {
        Self::new(self.sigma, self.t)
    }
}

/// θ(t) on the continuous branch together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaValue {
    pub t: f64,
    pub theta: f64,
    pub err_bound: f64,
}

/// Principal-branch log Γ(s) for Re(s) > 0, continued through the shift
/// recurrence elsewhere.
pub fn log_gamma(s: ComplexPoint) -> Result<Complex> {
    log_gamma_with_err(s.check_finite()?.to_complex()).map(|(v, _)| v)
}

/// log Γ(z) and the magnitude of the first omitted series term.
pub(crate) fn log_gamma_with_err(z: Complex) -> Result<(Complex, f64)> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain("non-finite argument to log_gamma"));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::domain(format!("Gamma pole at {}", z.re)));
    }

    // log Γ(z) = log Γ(z + N) − Σ_{k<N} log(z + k)
    let mut shifted = z;
    let mut correction = Complex::new(0.0, 0.0);
    while shifted.norm() < STIRLING_RADIUS || shifted.re < 0.0 {
        correction += shifted.ln();
        shifted += 1.0;
    }

    let (series, err) = stirling(shifted);
    Ok((series - correction, err + 4.0 * f64::EPSILON * series.norm()))
}

/// Stirling's series for |z| ≥ 10, truncated at the first term below the
/// cutoff or at the first term that starts to grow.
fn stirling(z: Complex) -> (Complex, f64) {
    let mut value = (z - 0.5) * z.ln() - z + HALF_LN_2PI;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut power = inv;
    let mut prev = f64::INFINITY;
    let mut omitted = 0.0;
    for (idx, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = (idx + 1) as f64;
        let term = power * (b / (2.0 * k * (2.0 * k - 1.0)));
        let mag = term.norm();
        if mag > prev {
            omitted = prev;
            break;
        }
        if mag < SERIES_CUTOFF {
            omitted = mag;
            break;
        }
        value += term;
        prev = mag;
        power *= inv2;
    }
    (value, omitted)
}

/// log χ(s) with χ(s) = π^{s−1/2} Γ((1−s)/2) / Γ(s/2), on the branch that is
/// continuous in the half-plane σ ≥ 1/2 for |t| large.
pub fn log_chi(s: ComplexPoint) -> Result<Complex> {
    let s = s.check_finite()?;
    if !(s.sigma > 0.0 && s.sigma < 2.0) {
        return Err(Error::OutOfRegion(format!(
            "chi requires 0 < sigma < 2, got {}",
            s.sigma
        )));
    }
    let z = s.to_complex();
    let num = log_gamma_with_err((1.0 - z) * 0.5)?.0;
    let den = log_gamma_with_err(z * 0.5)?.0;
    Ok((z - 0.5) * PI.ln() + num - den)
}

/// χ(s) from the functional equation ζ(s) = χ(s) ζ(1 − s).
pub fn chi(s: ComplexPoint) -> Result<Complex> {
    log_chi(s).map(|l| l.exp())
}

/// χ(s)^{−1/2} = exp(−½ log χ(s)). On the critical line this equals e^{iθ(t)}.
pub fn chi_inv_sqrt(s: ComplexPoint) -> Result<Complex> {
    log_chi(s).map(|l| (-0.5 * l).exp())
}

/// Coefficient of t^{−(2k−1)} in the large-t expansion of θ(t).
fn theta_coeff(k: usize) -> f64 {
    let kf = k as f64;
    let b = BERNOULLI_EVEN[k - 1].abs();
    (1.0 - 2f64.powf(1.0 - 2.0 * kf)) * b / (4.0 * kf * (2.0 * kf - 1.0))
}

/// Riemann–Siegel theta function with χ(1/2 + it)^{−1/2} = e^{iθ(t)}.
///
/// For t ≥ 10 the large-t expansion
/// θ(t) = (t/2)log(t/2π) − t/2 − π/8 + 1/(48t) + 7/(5760t³) + … is used;
/// below that θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π.
pub fn theta(t: f64) -> Result<ThetaValue> {
    if !t.is_finite() || t < 0.0 {
        return Err(Error::domain(format!("theta requires finite t >= 0, got {t}")));
    }
    if t < THETA_ASYMPTOTIC_FLOOR {
        let (lg, err) = log_gamma_with_err(Complex::new(0.25, 0.5 * t))?;
        let theta = lg.im - 0.5 * t * PI.ln();
        let err_bound = err + 8.0 * f64::EPSILON * (lg.norm() + 1.0);
        return Ok(ThetaValue {
            t,
            theta,
            err_bound,
        });
    }

    let main = 0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0;
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let mut power = inv;
    let mut tail = 0.0;
    let mut prev = f64::INFINITY;
    let mut omitted = 0.0;
    for k in 1..=BERNOULLI_EVEN.len() {
        let term = theta_coeff(k) * power;
        if term > prev {
            omitted = prev;
            break;
        }
        if term < SERIES_CUTOFF {
            omitted = term;
            break;
        }
        tail += term;
        prev = term;
        power *= inv2;
    }
    let rounding = 8.0 * f64::EPSILON * 0.5 * t * ((t / (2.0 * PI)).ln().abs() + 1.0);
    Ok(ThetaValue {
        t,
        theta: main + tail,
        err_bound: omitted + rounding + f64::EPSILON,
    })
}

/// θ'(t) = ½ log(t/2π) − Σ (2k−1) c_k t^{−2k}, the local angular frequency
/// of Z(t). Only the first few correction terms matter for t ≥ 1.
pub fn theta_prime(t: f64) -> f64 {
    let mut d = 0.5 * (t / (2.0 * PI)).ln();
    let inv2 = 1.0 / (t * t);
    let mut power = inv2;
    for k in 1..=4 {
        d -= (2 * k - 1) as f64 * theta_coeff(k) * power;
        power *= inv2;
    }
    d
}
