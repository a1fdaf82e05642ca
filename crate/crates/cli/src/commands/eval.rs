use hardy_core::special_fns::{theta, ComplexPoint};
use hardy_core::z_function::{z_definition, z_dirichlet, z_riemann_siegel_with};
use hardy_core::zeta_eval::{zeta_em, zeta_first_approx, ApproxConfig, XRule};
use hardy_core::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{finite, positive, EvalArgs, EvalMethod, FileLayer, Global};
use crate::error::{CliError, Outcome};
use crate::output::{emit, num, opt_num, Record};

#[derive(Debug, Serialize)]
pub struct EvalRow {
    pub t: f64,
    pub re_zeta: Option<f64>,
    pub im_zeta: Option<f64>,
    pub z: Option<f64>,
    pub method: &'static str,
    pub err_bound: Option<f64>,
    pub error: Option<String>,
}

impl Record for EvalRow {
    const HEADER: &'static [&'static str] = &["t", "re_zeta", "im_zeta", "z", "method", "err_bound", "error"];

    fn fields(&self) -> Vec<String> {
        vec![
            num(self.t),
            opt_num(self.re_zeta),
            opt_num(self.im_zeta),
            opt_num(self.z),
            self.method.to_string(),
            opt_num(self.err_bound),
            self.error.clone().unwrap_or_default(),
        ]
    }
}

struct Plan {
    grid: Vec<f64>,
    method: EvalMethod,
    sigma: f64,
    anchor: f64,
    approx: ApproxConfig,
    em_target: f64,
    kappa: f64,
}

fn method_name(m: EvalMethod) -> &'static str {
    match m {
        EvalMethod::Definition => "definition",
        EvalMethod::RiemannSiegel => "riemann_siegel",
        EvalMethod::DirichletPoly => "dirichlet_poly",
        EvalMethod::EulerMaclaurin => "euler_maclaurin",
    }
}

fn plan(args: &EvalArgs, file: &FileLayer) -> Result<Plan, CliError> {
    let t0 = finite("t0", file.resolve(args.t0, "t0", 10.0)?)?;
    let t1 = finite("t1", file.resolve(args.t1, "t1", 20.0)?)?;
    let step = positive("step", file.resolve(args.step, "step", 1.0)?)?;
    if t1 < t0 {
        return Err(CliError::Config(format!("t1 ({t1}) must not be below t0 ({t0})")));
    }
    let method = file.resolve(args.method, "method", EvalMethod::Definition)?;
    let sigma = finite("sigma", file.resolve(args.sigma, "sigma", 0.5)?)?;
    if sigma != 0.5 && method != EvalMethod::EulerMaclaurin {
        return Err(CliError::Config(format!(
            "sigma = {sigma} is only supported by method euler_maclaurin"
        )));
    }
    let mut anchor = file.resolve(args.anchor, "anchor", t0)?;
    if method == EvalMethod::DirichletPoly {
        anchor = positive("anchor", anchor)?;
    }
    let c = file.resolve(args.c, "c", 4.0)?;
    if !(c > 1.0) {
        return Err(CliError::Config(format!("c must exceed 1, got {c}")));
    }
    let em_target = positive("em_target", file.resolve(args.em_target, "em_target", 1e-10)?)?;
    let kappa = positive("kappa", file.resolve(args.kappa, "kappa", 1.0)?)?;
    // rounding guard so that t1 lands on the grid when (t1 − t0)/step is integral
    let count = ((t1 - t0) / step * (1.0 + 1e-12)).floor() as usize + 1;
    if count > 10_000_000 {
        return Err(CliError::Config(format!("grid of {count} points is too large; raise step")));
    }
    let grid = (0..count).map(|k| t0 + step * k as f64).collect();
    Ok(Plan {
        grid,
        method,
        sigma,
        anchor,
        approx: ApproxConfig {
            c,
            x_rule: XRule::FromAnchor(anchor),
            em_error_target: em_target,
            ..ApproxConfig::default()
        },
        em_target,
        kappa,
    })
}

fn evaluate(plan: &Plan, t: f64) -> hardy_core::Result<(Complex, Option<f64>, f64)> {
    match plan.method {
        EvalMethod::Definition => {
            let z = z_definition(t, plan.em_target)?;
            let zeta = zeta_em(ComplexPoint::critical(t)?, plan.em_target)?;
            Ok((zeta.value, Some(z.z), z.err_bound))
        }
        EvalMethod::RiemannSiegel => {
            let z = z_riemann_siegel_with(t, plan.kappa)?;
            let th = theta(t)?.theta;
            Ok((Complex::from_polar(z.z, -th), Some(z.z), z.err_bound))
        }
        EvalMethod::DirichletPoly => {
            let z = z_dirichlet(t, &plan.approx, plan.anchor)?;
            let zeta = zeta_first_approx(ComplexPoint::critical(t)?, &plan.approx)?;
            Ok((zeta.value, Some(z.z), z.err_bound))
        }
        EvalMethod::EulerMaclaurin => {
            let zeta = zeta_em(ComplexPoint::new(plan.sigma, t)?, plan.em_target)?;
            let z = if plan.sigma == 0.5 {
                let th = theta(t)?.theta;
                Some((Complex::from_polar(1.0, th) * zeta.value).re)
            } else {
                None
            };
            Ok((zeta.value, z, zeta.err_bound))
        }
    }
}

pub fn run(args: &EvalArgs, file: &FileLayer, global: &Global) -> Result<Outcome, CliError> {
    let plan = plan(args, file)?;
    let method = method_name(plan.method);
    let rows: Vec<EvalRow> = plan
        .grid
        .par_iter()
        .map(|&t| match evaluate(&plan, t) {
            Ok((zeta, z, err)) => EvalRow {
                t,
                re_zeta: Some(zeta.re),
                im_zeta: Some(zeta.im),
                z,
                method,
                err_bound: Some(err),
                error: None,
            },
            Err(e) => EvalRow {
                t,
                re_zeta: None,
                im_zeta: None,
                z: None,
                method,
                err_bound: None,
                error: Some(e.to_string()),
            },
        })
        .collect();
    emit::<_, ()>(global, "eval", &rows, None)?;
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        eprintln!("hardy eval: {failed} of {} rows failed", rows.len());
    }
    Ok(if failed == rows.len() {
        Outcome::AssertionFailed
    } else {
        Outcome::Passed
    })
}
