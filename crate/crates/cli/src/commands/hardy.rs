use hardy_core::hardy_harness::{fit_scaling, hardy_scan, HardyScanReport, ScalingFit, ScalingMetric, UPPER_ENVELOPE};
use hardy_core::z_function::ZMethod;
use hardy_core::Error as CoreError;
use serde::Serialize;

use crate::config::{positive, FileLayer, Global, HardyArgs, ZRoute};
use crate::error::{CliError, Outcome};
use crate::output::{emit, opt_num, Record};

const LOWER_RATIO_FLOOR: f64 = 0.9;
const LOWER_RATIO_FROM: f64 = 200.0;

#[derive(Debug, Serialize)]
pub struct HardyRow {
    #[serde(rename = "T")]
    pub t_anchor: f64,
    pub re_i: Option<f64>,
    pub im_i: Option<f64>,
    pub j: Option<f64>,
    pub quad_err: Option<f64>,
    pub ratio: Option<f64>,
    pub bound_t34: Option<f64>,
    pub lower_ratio: Option<f64>,
    pub sign_changes: Option<usize>,
    pub status: String,
}

impl Record for HardyRow {
    const HEADER: &'static [&'static str] = &[
        "T",
        "re_i",
        "im_i",
        "j",
        "quad_err",
        "ratio",
        "bound_t34",
        "lower_ratio",
        "sign_changes",
        "status",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            opt_num(Some(self.t_anchor)),
            opt_num(self.re_i),
            opt_num(self.im_i),
            opt_num(self.j),
            opt_num(self.quad_err),
            opt_num(self.ratio),
            opt_num(self.bound_t34),
            opt_num(self.lower_ratio),
            self.sign_changes.map(|n| n.to_string()).unwrap_or_default(),
            self.status.clone(),
        ]
    }
}

#[derive(Debug, Serialize)]
struct Summary {
    fit_j: Option<ScalingFit>,
    fit_abs_i: Option<ScalingFit>,
    sign_changes_monotone: bool,
}

/// Names of the window assertions that fail for this report.
fn failed_checks(r: &HardyScanReport) -> Vec<&'static str> {
    let mut failed = Vec::new();
    if !r.triangle_holds() {
        failed.push("triangle");
    }
    if !r.strictly_below_one() {
        failed.push("ratio");
    }
    if r.sign_changes == 0 {
        failed.push("sign_changes");
    }
    if r.bound_t34 > UPPER_ENVELOPE {
        failed.push("bound_t34");
    }
    if r.t_anchor >= LOWER_RATIO_FROM && r.lower_ratio < LOWER_RATIO_FLOOR {
        failed.push("lower_ratio");
    }
    if r.i.im.abs() > 10.0 * r.quad_err {
        failed.push("im_i");
    }
    failed
}

fn route(r: ZRoute) -> ZMethod {
    match r {
        ZRoute::Definition => ZMethod::Definition,
        ZRoute::RiemannSiegel => ZMethod::RiemannSiegel,
        ZRoute::DirichletPoly => ZMethod::DirichletPoly,
    }
}

pub fn run(args: &HardyArgs, file: &FileLayer, global: &Global) -> Result<Outcome, CliError> {
    let mut anchors = file.resolve_list(args.anchors.clone(), "T", &[100.0, 1000.0])?;
    if anchors.is_empty() {
        return Err(CliError::Config("T list must not be empty".into()));
    }
    if let Some(t) = anchors.iter().find(|&&t| !(t >= 50.0) || !t.is_finite()) {
        return Err(CliError::Config(format!("every T must be >= 50, got {t}")));
    }
    anchors.sort_by(f64::total_cmp);
    anchors.dedup();
    let quad_tol = positive("quad_tol", file.resolve(args.quad_tol, "quad_tol", 1e-4)?)?;
    let method = route(file.resolve(args.method, "method", ZRoute::Definition)?);

    let mut outcome = Outcome::Passed;
    let mut rows = Vec::with_capacity(anchors.len());
    let mut reports = Vec::with_capacity(anchors.len());
    for &t in &anchors {
        match hardy_scan(t, quad_tol, method) {
            Ok(r) => {
                let failed = failed_checks(&r);
                let status = if failed.is_empty() {
                    "ok".to_string()
                } else {
                    outcome = outcome.worst(Outcome::AssertionFailed);
                    format!("failed: {}", failed.join(" "))
                };
                rows.push(HardyRow {
                    t_anchor: t,
                    re_i: Some(r.i.re),
                    im_i: Some(r.i.im),
                    j: Some(r.j),
                    quad_err: Some(r.quad_err),
                    ratio: Some(r.ratio),
                    bound_t34: Some(r.bound_t34),
                    lower_ratio: Some(r.lower_ratio),
                    sign_changes: Some(r.sign_changes),
                    status,
                });
                reports.push(r);
            }
            Err(e) => {
                outcome = outcome.worst(match e {
                    CoreError::Accuracy { .. } => Outcome::AccuracyFailed,
                    _ => Outcome::AssertionFailed,
                });
                rows.push(HardyRow {
                    t_anchor: t,
                    re_i: None,
                    im_i: None,
                    j: None,
                    quad_err: None,
                    ratio: None,
                    bound_t34: None,
                    lower_ratio: None,
                    sign_changes: None,
                    status: e.to_string(),
                });
            }
        }
    }

    let monotone = reports.windows(2).all(|w| w[0].sign_changes <= w[1].sign_changes);
    if !monotone {
        outcome = outcome.worst(Outcome::AssertionFailed);
    }
    let summary = Summary {
        fit_j: fit_scaling(&reports, ScalingMetric::J).ok(),
        fit_abs_i: fit_scaling(&reports, ScalingMetric::AbsI).ok(),
        sign_changes_monotone: monotone,
    };
    if let Some(fit) = &summary.fit_abs_i {
        if fit.envelope_ok == Some(false) {
            outcome = outcome.worst(Outcome::AssertionFailed);
        }
    }
    emit(global, "hardy", &rows, Some(&summary))?;
    Ok(outcome)
}
