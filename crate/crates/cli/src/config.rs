//! Command-line surface and the flag > config file > default layering.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;

pub const WORKERS_ENV: &str = "HARDY_WORKERS";

const LAYERING_HELP: &str = "\
Configuration precedence: command-line flags (and HARDY_WORKERS for the
worker count) override keys from --config, which override built-in defaults.
The config file holds one `key = value` per line; `#` starts a comment. Keys
are flag names with dashes replaced by underscores (t_max, quad_tol, ...).

Exit codes: 0 all assertions passed, 1 assertion failure, 2 configuration
error, 3 numerical accuracy failure.";

#[derive(Debug, Parser)]
#[command(name = "hardy", version, about = "Hardy Z-function batch runs", after_help = LAYERING_HELP)]
pub struct Cli {
    /// Write the primary output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads [env: HARDY_WORKERS; default: available parallelism].
    #[arg(long, global = true, env = WORKERS_ENV, hide_env = true)]
    pub workers: Option<usize>,

    /// Seed for randomized suites [default: 42].
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Key-value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate ζ and Z on a grid of heights.
    Eval(EvalArgs),
    /// Scan for sign changes of Z.
    Zeros(ZerosArgs),
    /// Integrate Z and |Z| over [T, 2T] windows.
    Hardy(HardyArgs),
    /// Randomized van der Corput certificate suite.
    Lemmas(LemmasArgs),
    /// Contour integrals of ζ and χ^{-1/2}ζ.
    Contour(ContourArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum EvalMethod {
    Definition,
    RiemannSiegel,
    DirichletPoly,
    EulerMaclaurin,
}

impl FromStr for EvalMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ZRoute {
    Definition,
    RiemannSiegel,
    DirichletPoly,
}

impl FromStr for ZRoute {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Valid,
    Adversarial,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// First height [default: 10].
    #[arg(long)]
    pub t0: Option<f64>,
    /// Last height, inclusive [default: 20].
    #[arg(long)]
    pub t1: Option<f64>,
    /// Grid step [default: 1].
    #[arg(long)]
    pub step: Option<f64>,
    /// [default: definition]
    #[arg(long, value_enum)]
    pub method: Option<EvalMethod>,
    /// Real part; only euler_maclaurin accepts σ ≠ 1/2 [default: 0.5].
    #[arg(long)]
    pub sigma: Option<f64>,
    /// Window anchor T for dirichlet_poly [default: t0].
    #[arg(long)]
    pub anchor: Option<f64>,
    /// Validity constant C > 1 for dirichlet_poly [default: 4].
    #[arg(long)]
    pub c: Option<f64>,
    /// Euler–Maclaurin error target [default: 1e-10].
    #[arg(long)]
    pub em_target: Option<f64>,
    /// κ in the Riemann–Siegel budget κ·t^{-1/4} [default: 1].
    #[arg(long)]
    pub kappa: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ZerosArgs {
    /// [default: 10]
    #[arg(long)]
    pub t_min: Option<f64>,
    /// [default: 100]
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Bisection width [default: 1e-9].
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct HardyArgs {
    /// Comma-separated window anchors [default: 100,1000].
    #[arg(long = "T", value_delimiter = ',')]
    pub anchors: Option<Vec<f64>>,
    /// Quadrature tolerance per window [default: 1e-4].
    #[arg(long)]
    pub quad_tol: Option<f64>,
    /// [default: definition]
    #[arg(long, value_enum)]
    pub method: Option<ZRoute>,
}

#[derive(Debug, Args)]
pub struct LemmasArgs {
    /// [default: 1000]
    #[arg(long)]
    pub trials: Option<usize>,
    /// [default: valid]
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
}

#[derive(Debug, Args)]
pub struct ContourArgs {
    /// Window anchor [default: 100].
    #[arg(long = "T")]
    pub anchor: Option<f64>,
    /// Right edge 1 + δ of the Cauchy rectangle, 0 < δ < 1/2 [default: 0.25].
    #[arg(long)]
    pub delta: Option<f64>,
}

const KNOWN_KEYS: &[&str] = &[
    "out", "format", "workers", "seed", "t0", "t1", "step", "method", "sigma", "anchor", "c",
    "em_target", "kappa", "t_min", "t_max", "tol", "T", "quad_tol", "trials", "mode", "delta",
];

/// Keys read from a config file.
#[derive(Debug, Default)]
pub struct FileLayer {
    entries: BTreeMap<String, String>,
    source: Option<PathBuf>,
}

impl FileLayer {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut layer = Self::parse(&text)?;
        layer.source = Some(path.to_path_buf());
        Ok(layer)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("config line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Config(format!(
                    "config line {}: unknown key `{key}`",
                    lineno + 1
                )));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self {
            entries,
            source: None,
        })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    fn parse_value<T>(&self, key: &str, raw: &str) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        raw.parse().map_err(|e| {
            let origin = self
                .source
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_else(|| "config".into());
            CliError::Config(format!("invalid value for `{key}` in {origin}: {e}"))
        })
    }

    /// The flag if given, else the file entry, else `default`.
    pub fn resolve<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        Ok(self.resolve_opt(flag, key)?.unwrap_or(default))
    }

    pub fn resolve_opt<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: Display,
    {
        match (flag, self.raw(key)) {
            (Some(v), _) => Ok(Some(v)),
            (None, Some(raw)) => self.parse_value(key, raw).map(Some),
            (None, None) => Ok(None),
        }
    }

    pub fn resolve_list(&self, flag: Option<Vec<f64>>, key: &str, default: &[f64]) -> Result<Vec<f64>, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.raw(key) {
            Some(raw) => raw
                .split(',')
                .map(|part| self.parse_value::<f64>(key, part.trim()))
                .collect(),
            None => Ok(default.to_vec()),
        }
    }
}

/// Settings shared by every command after layering.
#[derive(Debug, Clone)]
pub struct Global {
    pub out: Option<PathBuf>,
    pub format: Format,
    pub workers: usize,
    pub seed: u64,
}

impl Global {
    pub fn resolve(cli: &Cli, file: &FileLayer) -> Result<Self, CliError> {
        let default_workers = std::thread::available_parallelism().map_or(1, |n| n.get());
        let workers = file.resolve(cli.workers, "workers", default_workers)?;
        if workers == 0 {
            return Err(CliError::Config("workers must be at least 1".into()));
        }
        Ok(Self {
            out: file.resolve_opt(cli.out.clone(), "out")?,
            format: file.resolve(cli.format, "format", Format::Csv)?,
            workers,
            seed: file.resolve(cli.seed, "seed", 42)?,
        })
    }
}

pub fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{name} must be positive and finite, got {v}")))
    }
}

pub fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Config(format!("{name} must be finite, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_dashes() {
        let f = FileLayer::parse("# header\nt-max = 50 # inline\n\ntol=1e-9\n").unwrap();
        assert_eq!(f.resolve::<f64>(None, "t_max", 1.0).unwrap(), 50.0);
        assert_eq!(f.resolve::<f64>(None, "tol", 1.0).unwrap(), 1e-9);
        assert_eq!(f.resolve::<f64>(Some(7.0), "t_max", 1.0).unwrap(), 7.0);
        assert_eq!(f.resolve::<f64>(None, "step", 0.5).unwrap(), 0.5);
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(FileLayer::parse("bogus = 1").is_err());
        assert!(FileLayer::parse("tol 1e-9").is_err());
        let f = FileLayer::parse("tol = abc").unwrap();
        let err = f.resolve::<f64>(None, "tol", 1.0).unwrap_err();
        assert!(err.to_string().contains("`tol`"));
    }

    #[test]
    fn list_values() {
        let f = FileLayer::parse("T = 100, 200,400").unwrap();
        assert_eq!(f.resolve_list(None, "T", &[1.0]).unwrap(), vec![100.0, 200.0, 400.0]);
        assert_eq!(f.resolve_list(Some(vec![5.0]), "T", &[1.0]).unwrap(), vec![5.0]);
    }

    #[test]
    fn enum_values_from_file() {
        let f = FileLayer::parse("method = riemann_siegel\nformat = json").unwrap();
        assert_eq!(f.resolve(None, "method", EvalMethod::Definition).unwrap(), EvalMethod::RiemannSiegel);
        assert_eq!(f.resolve(None, "format", Format::Csv).unwrap(), Format::Json);
    }
}
