//! Flags, the optional JSON parameter file, and their merge.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::UsageError;

#[derive(Parser, Debug)]
#[command(
    name = "fdldg",
    version,
    about = "Time-fractional diffusion-wave solver (finite differences in time, LDG in space)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve once and emit the sampled solution at the final time
    Run(Params),
    /// Mesh-refinement study at fixed dt
    ConvergeSpace(Params),
    /// Time-step refinement study at fixed mesh
    ConvergeTime(Params),
    /// Rerun a published table and diff every cell
    VerifyPaper(Params),
}

impl Command {
    pub fn params(&self) -> &Params {
        match self {
            Command::Run(p) | Command::ConvergeSpace(p) | Command::ConvergeTime(p) | Command::VerifyPaper(p) => p,
        }
    }

    pub fn verb(&self) -> Verb {
        match self {
            Command::Run(_) => Verb::Run,
            Command::ConvergeSpace(_) => Verb::ConvergeSpace,
            Command::ConvergeTime(_) => Verb::ConvergeTime,
            Command::VerifyPaper(_) => Verb::VerifyPaper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Run,
    ConvergeSpace,
    ConvergeTime,
    VerifyPaper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Text,
}

#[derive(Args, Debug, Default)]
pub struct Params {
    /// Fractional order(s) in (1,2), comma separated
    #[arg(long, value_delimiter = ',')]
    pub alpha: Vec<f64>,
    /// Polynomial degree(s) k
    #[arg(long, value_delimiter = ',')]
    pub degree: Vec<usize>,
    /// Cell count(s) N
    #[arg(long, value_delimiter = ',')]
    pub cells: Vec<usize>,
    /// Time step(s); rounded so the step count is an integer
    #[arg(long, value_delimiter = ',')]
    pub dt: Vec<f64>,
    /// Final time
    #[arg(long)]
    pub tfinal: Option<f64>,
    /// example41, power:<m>:<q> or stability
    #[arg(long)]
    pub problem: Option<String>,
    /// Output file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Table 1-5 or "all" (verify-paper)
    #[arg(long)]
    pub table: Option<String>,
    /// JSON object with any of the keys above; flags win
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
enum TableKey {
    Number(u8),
    Name(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    alpha: Option<OneOrMany<f64>>,
    degree: Option<OneOrMany<usize>>,
    cells: Option<OneOrMany<usize>>,
    dt: Option<OneOrMany<f64>>,
    tfinal: Option<f64>,
    problem: Option<String>,
    out: Option<PathBuf>,
    format: Option<Format>,
    table: Option<TableKey>,
}

fn read_config(path: &Path) -> Result<ConfigFile, UsageError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| UsageError(format!("invalid config {}: {e}", path.display())))
}

/// Parameters after flags, config file and per-verb defaults are applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub alpha: Vec<f64>,
    pub degree: Vec<usize>,
    pub cells: Vec<usize>,
    pub dt: Vec<f64>,
    pub tfinal: Option<f64>,
    pub problem: String,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub tables: Vec<u8>,
}

fn pick<T>(flag: Vec<T>, file: Option<OneOrMany<T>>, default: &[T]) -> Vec<T>
where
    T: Clone,
{
    if !flag.is_empty() {
        flag
    } else if let Some(v) = file {
        v.into_vec()
    } else {
        default.to_vec()
    }
}

fn parse_tables(spec: &str) -> Result<Vec<u8>, UsageError> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok((1..=5).collect());
    }
    spec.split(',')
        .map(|t| match t.trim().parse::<u8>() {
            Ok(id @ 1..=5) => Ok(id),
            _ => Err(UsageError(format!("unknown table {t:?}; expected 1..5 or all"))),
        })
        .collect()
}

impl Settings {
    pub fn resolve(verb: Verb, params: &Params) -> Result<Self, UsageError> {
        let file = match &params.config {
            Some(path) => read_config(path)?,
            None => ConfigFile::default(),
        };
        let (alpha, degree, cells, dt): (&[f64], &[usize], &[usize], &[f64]) = match verb {
            Verb::Run => (&[1.5], &[2], &[40], &[1e-3]),
            Verb::ConvergeSpace => (&[1.2], &[0, 1, 2], &[5, 10, 20, 40, 80], &[1e-3]),
            Verb::ConvergeTime => (&[1.1], &[2], &[200], &[0.05, 0.04, 0.03, 0.02]),
            Verb::VerifyPaper => (&[], &[], &[], &[]),
        };
        let table = match (&params.table, file.table) {
            (Some(t), _) => Some(t.clone()),
            (None, Some(TableKey::Number(n))) => Some(n.to_string()),
            (None, Some(TableKey::Name(s))) => Some(s),
            (None, None) => None,
        };
        let settings = Settings {
            alpha: pick(params.alpha.clone(), file.alpha, alpha),
            degree: pick(params.degree.clone(), file.degree, degree),
            cells: pick(params.cells.clone(), file.cells, cells),
            dt: pick(params.dt.clone(), file.dt, dt),
            tfinal: params.tfinal.or(file.tfinal),
            problem: params.problem.clone().or(file.problem).unwrap_or_else(|| "example41".into()),
            out: params.out.clone().or(file.out),
            format: params.format.or(file.format).unwrap_or(Format::Csv),
            tables: match table {
                Some(t) => parse_tables(&t)?,
                None if verb == Verb::VerifyPaper => (1..=5).collect(),
                None => Vec::new(),
            },
        };
        settings.check(verb)?;
        Ok(settings)
    }

    fn check(&self, verb: Verb) -> Result<(), UsageError> {
        let single = |name: &str, len: usize| {
            if len == 1 {
                Ok(())
            } else {
                Err(UsageError(format!("{name} takes exactly one value here, got {len}")))
            }
        };
        match verb {
            Verb::Run => {
                single("--alpha", self.alpha.len())?;
                single("--degree", self.degree.len())?;
                single("--cells", self.cells.len())?;
                single("--dt", self.dt.len())?;
            }
            Verb::ConvergeSpace => {
                single("--dt", self.dt.len())?;
                if self.alpha.is_empty() || self.degree.is_empty() || self.cells.is_empty() {
                    return Err(UsageError("--alpha, --degree and --cells need at least one value".into()));
                }
            }
            Verb::ConvergeTime => {
                single("--degree", self.degree.len())?;
                single("--cells", self.cells.len())?;
                if self.alpha.is_empty() || self.dt.is_empty() {
                    return Err(UsageError("--alpha and --dt need at least one value".into()));
                }
            }
            Verb::VerifyPaper => {}
        }
        if let Some(t) = self.tfinal {
            if t.is_nan() || t <= 0.0 {
                return Err(UsageError(format!("--tfinal must be positive, got {t}")));
            }
        }
        Ok(())
    }
}
