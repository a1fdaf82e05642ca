//! CSV and JSON writers. Doubles go to CSV with 17 significant digits so
//! every value round-trips; JSON carries a top-level schema version.

use std::io::Write;

use serde::Serialize;

use crate::config::{Format, Global};
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// A row with a fixed CSV column layout.
pub trait Record: Serialize {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

#[derive(Serialize)]
struct Document<'a, R, S> {
    schema_version: u32,
    command: &'a str,
    rows: &'a [R],
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<&'a S>,
}

pub fn render<R, S>(format: Format, command: &str, rows: &[R], summary: Option<&S>) -> Result<Vec<u8>, CliError>
where
    R: Record,
    S: Serialize,
{
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io(e.into());
            w.write_record(R::HEADER).map_err(io)?;
            for row in rows {
                w.write_record(row.fields()).map_err(io)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        Format::Json => {
            let doc = Document {
                schema_version: SCHEMA_VERSION,
                command,
                rows,
                summary,
            };
            let mut buf = serde_json::to_vec_pretty(&doc).map_err(|e| CliError::Io(e.into()))?;
            buf.push(b'\n');
            Ok(buf)
        }
    }
}

/// Writes the rendered output to `--out` or stdout.
pub fn emit<R, S>(global: &Global, command: &str, rows: &[R], summary: Option<&S>) -> Result<(), CliError>
where
    R: Record,
    S: Serialize,
{
    let bytes = render(global.format, command, rows, summary)?;
    match &global.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}
