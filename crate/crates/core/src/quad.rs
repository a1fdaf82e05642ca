//! Globally adaptive 7/15-point Gauss–Kronrod quadrature for complex-valued
//! integrands on a finite interval.
//!
//! Callers hand in an initial panel partition (for oscillatory integrands one
//! panel per oscillation or finer); the worst panel is bisected until the
//! summed error estimate meets the absolute tolerance or the panel budget is
//! exhausted, in which case `converged` is false.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Default cap on the number of panels in one adaptive run.
pub const DEFAULT_MAX_PANELS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: Complex,
    pub err: f64,
    pub evals: usize,
    pub panels: usize,
    /// False when the panel budget ran out before `err <= tol`.
    pub converged: bool,
}

impl QuadResult {
    pub fn into_checked(self, tol: f64) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::Accuracy {
                target: tol,
                estimate: self.err,
                partial: Some((self.value.norm(), self.err)),
            })
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// One 15-point Kronrod panel and its rescaled error estimate.
pub fn gk15<F>(f: &F, a: f64, b: f64) -> Result<(Complex, f64)>
where
    F: Fn(f64) -> Complex,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<Complex> {
        let v = f(x);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::Evaluation { x })
        }
    };

    let fc = eval(center)?;
    let mut values = [Complex::new(0.0, 0.0); 15];
    values[7] = fc;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs_sum = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        values[j] = f1;
        values[14 - j] = f2;
        let sum = f1 + f2;
        kronrod += sum * WGK[j];
        abs_sum += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += sum * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = (fc - mean).norm() * WGK[7];
    for j in 0..7 {
        asc += ((values[j] - mean).norm() + (values[14 - j] - mean).norm()) * WGK[j];
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    Ok((value, rescale_error(((kronrod - gauss) * half).norm(), res_abs, res_asc)))
}

/// QUADPACK's error rescaling of the raw |K15 − G7| difference.
fn rescale_error(raw: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = raw;
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

/// Integrates `f` over the partition given by `breaks` (sorted, at least two
/// points) to absolute tolerance `tol`.
pub fn integrate<F>(f: &F, breaks: &[f64], tol: f64, max_panels: usize) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex,
{
    if breaks.len() < 2 {
        return Err(Error::Argument("need at least one panel".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Argument(format!("tolerance must be positive, got {tol}")));
    }
    if breaks.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Argument("breakpoints must be strictly increasing".into()));
    }

    let mut heap = BinaryHeap::with_capacity(breaks.len() * 2);
    let mut total_err = 0.0;
    for w in breaks.windows(2) {
        let (value, err) = gk15(f, w[0], w[1])?;
        total_err += err;
        heap.push(Panel {
            a: w[0],
            b: w[1],
            value,
            err,
        });
    }
    let mut evals = 15 * (breaks.len() - 1);

    while total_err > tol && heap.len() < max_panels {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // panel can no longer be split in f64
            heap.push(Panel { err: 0.0, ..worst });
            total_err -= worst.err;
            continue;
        }
        let (v1, e1) = gk15(f, worst.a, mid)?;
        let (v2, e2) = gk15(f, mid, worst.b)?;
        evals += 30;
        total_err += e1 + e2 - worst.err;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            err: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            err: e2,
        });
    }

    // Sum in positional order so the result does not depend on heap layout.
    let mut panels = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().fold(Complex::new(0.0, 0.0), |acc, p| acc + p.value);
    let err: f64 = panels.iter().map(|p| p.err).sum();
    Ok(QuadResult {
        value,
        err,
        evals,
        panels: panels.len(),
        converged: err <= tol,
    })
}

/// Uniform partition of [a, b] into `n` panels.
pub fn uniform_breaks(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    let h = (b - a) / n as f64;
    let mut v: Vec<f64> = (0..n).map(|k| a + h * k as f64).collect();
    v.push(b);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let f = |x: f64| Complex::new(x.powi(5) - 3.0 * x, 0.0);
        let r = integrate(&f, &[0.0, 2.0], 1e-11, 10).unwrap();
        assert!((r.value.re - (64.0 / 6.0 - 6.0)).abs() < 1e-13);
        assert!(r.converged);
    }

    #[test]
    fn adapts_to_peaked_integrand() {
        let f = |x: f64| Complex::new(1.0 / (1e-4 + x * x), 0.0);
        let r = integrate(&f, &[-1.0, 1.0], 1e-9, 10_000).unwrap();
        let exact = 2.0 * (1.0 / 1e-4f64.sqrt()) * (1.0 / 1e-4f64.sqrt()).atan();
        assert!((r.value.re - exact).abs() < 1e-8, "{} vs {exact}", r.value.re);
    }

    #[test]
    fn nonfinite_is_reported() {
        let f = |x: f64| Complex::new((x - 0.3).sqrt(), 0.0);
        let err = integrate(&f, &[0.0, 1.0], 1e-8, 10).unwrap_err();
        assert!(matches!(err, Error::Evaluation { .. }));
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let f = |x: f64| Complex::new((1.0 / (x + 1e-9)).sin(), 0.0);
        let r = integrate(&f, &[0.0, 1.0], 1e-14, 4).unwrap();
        assert!(!r.converged);
        assert!(matches!(r.into_checked(1e-14), Err(Error::Accuracy { .. })));
    }
}
