use hardy_core::oscillatory::{certificate_suite, CertificateTrial, Lemma, SuiteMode};
use serde::Serialize;

use crate::config::{FileLayer, Global, LemmasArgs, Mode};
use crate::error::{CliError, Outcome};
use crate::output::{emit, num, opt_num, Record};

#[derive(Debug, Serialize)]
pub struct LemmaRow {
    pub index: usize,
    pub lemma: &'static str,
    pub n: u64,
    pub a: f64,
    pub b: f64,
    pub derivative_bound: f64,
    pub amplitude_bound: f64,
    pub numeric_abs: Option<f64>,
    pub quad_err: Option<f64>,
    pub analytic_bound: Option<f64>,
    pub slack: Option<f64>,
    pub status: String,
}

impl Record for LemmaRow {
    const HEADER: &'static [&'static str] = &[
        "index",
        "lemma",
        "n",
        "a",
        "b",
        "derivative_bound",
        "amplitude_bound",
        "numeric_abs",
        "quad_err",
        "analytic_bound",
        "slack",
        "status",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            self.lemma.to_string(),
            self.n.to_string(),
            num(self.a),
            num(self.b),
            num(self.derivative_bound),
            num(self.amplitude_bound),
            opt_num(self.numeric_abs),
            opt_num(self.quad_err),
            opt_num(self.analytic_bound),
            opt_num(self.slack),
            self.status.clone(),
        ]
    }
}

#[derive(Debug, Serialize)]
struct Summary {
    seed: u64,
    trials: usize,
    certified: usize,
    precondition_flags: usize,
    negative_slack: usize,
    min_slack: Option<f64>,
}

fn row(trial: CertificateTrial) -> LemmaRow {
    let lemma = match trial.lemma {
        Lemma::FirstDerivative => "first_derivative",
        Lemma::SecondDerivative => "second_derivative",
    };
    let mut row = LemmaRow {
        index: trial.index,
        lemma,
        n: trial.n,
        a: trial.a,
        b: trial.b,
        derivative_bound: trial.derivative_bound,
        amplitude_bound: trial.amplitude_bound,
        numeric_abs: None,
        quad_err: None,
        analytic_bound: None,
        slack: None,
        status: String::new(),
    };
    match trial.outcome {
        Ok(cert) => {
            row.numeric_abs = Some(cert.numeric_abs);
            row.quad_err = Some(cert.quad_err);
            row.analytic_bound = Some(cert.analytic_bound);
            row.slack = Some(cert.slack);
            row.status = if cert.slack >= 0.0 { "ok" } else { "negative_slack" }.into();
        }
        Err(msg) => row.status = format!("flagged: {msg}"),
    }
    row
}

pub fn run(args: &LemmasArgs, file: &FileLayer, global: &Global) -> Result<Outcome, CliError> {
    let trials = file.resolve(args.trials, "trials", 1000)?;
    if trials == 0 {
        return Err(CliError::Config("trials must be at least 1".into()));
    }
    let mode = match file.resolve(args.mode, "mode", Mode::Valid)? {
        Mode::Valid => SuiteMode::Valid,
        Mode::Adversarial => SuiteMode::Adversarial,
    };
    let rows: Vec<LemmaRow> = certificate_suite(trials, global.seed, mode)
        .into_iter()
        .map(row)
        .collect();
    let slacks: Vec<f64> = rows.iter().filter_map(|r| r.slack).collect();
    let negative = slacks.iter().filter(|&&s| s < 0.0).count();
    let summary = Summary {
        seed: global.seed,
        trials,
        certified: slacks.len(),
        precondition_flags: rows.len() - slacks.len(),
        negative_slack: negative,
        min_slack: slacks.iter().copied().reduce(f64::min),
    };
    emit(global, "lemmas", &rows, Some(&summary))?;
    Ok(if negative > 0 {
        Outcome::AssertionFailed
    } else {
        Outcome::Passed
    })
}
