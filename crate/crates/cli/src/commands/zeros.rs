use hardy_core::hardy_harness::scan_zeros;
use serde::Serialize;

use crate::config::{finite, positive, FileLayer, Global, ZerosArgs};
use crate::error::{CliError, Outcome};
use crate::output::{emit, num, Record};

#[derive(Debug, Serialize)]
pub struct ZeroRow {
    pub index: usize,
    pub t_lo: f64,
    pub t_hi: f64,
    pub refined_t: f64,
    pub iterations: u32,
}

impl Record for ZeroRow {
    const HEADER: &'static [&'static str] = &["index", "t_lo", "t_hi", "refined_t", "iterations"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.index.to_string(),
            num(self.t_lo),
            num(self.t_hi),
            num(self.refined_t),
            self.iterations.to_string(),
        ]
    }
}

pub fn run(args: &ZerosArgs, file: &FileLayer, global: &Global) -> Result<Outcome, CliError> {
    let t_min = finite("t_min", file.resolve(args.t_min, "t_min", 10.0)?)?;
    let t_max = finite("t_max", file.resolve(args.t_max, "t_max", 100.0)?)?;
    let tol = positive("tol", file.resolve(args.tol, "tol", 1e-9)?)?;
    if t_min < 10.0 {
        return Err(CliError::Config(format!("t_min must be at least 10, got {t_min}")));
    }
    if t_max <= t_min {
        return Err(CliError::Config(format!("t_max ({t_max}) must exceed t_min ({t_min})")));
    }
    let rows: Vec<ZeroRow> = scan_zeros(t_min, t_max, tol)?
        .into_iter()
        .enumerate()
        .map(|(k, b)| ZeroRow {
            index: k + 1,
            t_lo: b.t_lo,
            t_hi: b.t_hi,
            refined_t: b.refined_t,
            iterations: b.iterations,
        })
        .collect();
    emit::<_, ()>(global, "zeros", &rows, None)?;
    Ok(Outcome::Passed)
}
