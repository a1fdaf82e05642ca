use hardy_core::hardy_harness::{
    lower_bound_contour, verify_cauchy_rectangle, CauchyRectangleRecord, LowerContourRecord, SideIntegral,
};
use serde::Serialize;

use crate::config::{ContourArgs, FileLayer, Global};
use crate::error::{CliError, Outcome};
use crate::output::{emit, num, Record};

#[derive(Debug, Serialize)]
pub struct ContourRow {
    pub contour: &'static str,
    pub side: &'static str,
    pub from_re: f64,
    pub from_im: f64,
    pub to_re: f64,
    pub to_im: f64,
    pub re: f64,
    pub im: f64,
    pub err: f64,
}

impl Record for ContourRow {
    const HEADER: &'static [&'static str] =
        &["contour", "side", "from_re", "from_im", "to_re", "to_im", "re", "im", "err"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.contour.to_string(),
            self.side.to_string(),
            num(self.from_re),
            num(self.from_im),
            num(self.to_re),
            num(self.to_im),
            num(self.re),
            num(self.im),
            num(self.err),
        ]
    }
}

#[derive(Debug, Serialize)]
struct Checks {
    right_side_within_5: bool,
    lower_closure: bool,
    cauchy_closure: bool,
}

#[derive(Debug, Serialize)]
struct Summary {
    lower: LowerContourRecord,
    cauchy: CauchyRectangleRecord,
    checks: Checks,
}

fn side_row(contour: &'static str, side: &'static str, s: &SideIntegral) -> ContourRow {
    ContourRow {
        contour,
        side,
        from_re: s.from.re,
        from_im: s.from.im,
        to_re: s.to.re,
        to_im: s.to.im,
        re: s.value.re,
        im: s.value.im,
        err: s.err,
    }
}

/// Residual rows reuse the layout: `re` holds the residual, `err` the budget.
fn residual_row(contour: &'static str, residual: f64, budget: f64) -> ContourRow {
    ContourRow {
        contour,
        side: "closure",
        from_re: f64::NAN,
        from_im: f64::NAN,
        to_re: f64::NAN,
        to_im: f64::NAN,
        re: residual,
        im: 0.0,
        err: budget,
    }
}

pub fn run(args: &ContourArgs, file: &FileLayer, global: &Global) -> Result<Outcome, CliError> {
    let t = file.resolve(args.anchor, "T", 100.0)?;
    let delta = file.resolve(args.delta, "delta", 0.25)?;
    if !(t >= 50.0) || !t.is_finite() {
        return Err(CliError::Config(format!("T must be >= 50, got {t}")));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(CliError::Config(format!("delta must satisfy 0 < delta < 1/2, got {delta}")));
    }
    let lower = lower_bound_contour(t)?;
    let cauchy = verify_cauchy_rectangle(t, delta)?;

    let mut rows = vec![
        side_row("lower", "bottom", &lower.bottom),
        side_row("lower", "right", &lower.right),
        side_row("lower", "top", &lower.top),
        side_row("lower", "direct", &lower.direct),
        residual_row("lower", lower.closure_residual, lower.closure_budget),
    ];
    for (side, s) in ["bottom", "right", "top", "left"].into_iter().zip(&cauchy.sides) {
        rows.push(side_row("cauchy", side, s));
    }
    rows.push(residual_row("cauchy", cauchy.residual, cauchy.budget));

    let checks = Checks {
        right_side_within_5: lower.right_side_ok(),
        lower_closure: lower.closure_ok(),
        cauchy_closure: cauchy.closure_ok(),
    };
    let passed = checks.right_side_within_5 && checks.lower_closure && checks.cauchy_closure;
    let summary = Summary { lower, cauchy, checks };
    emit(global, "contour", &rows, Some(&summary))?;
    Ok(if passed { Outcome::Passed } else { Outcome::AssertionFailed })
}
