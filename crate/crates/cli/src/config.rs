//! Sweep settings: flags override the TOML file, which overrides defaults.

use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// `trunc = 32` or `trunc = [16, 32, 64]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct FileConfig {
    eps: Option<Vec<f64>>,
    mu: Option<f64>,
    mu_center: Option<f64>,
    mu_width: Option<f64>,
    samples: Option<usize>,
    trunc: Option<OneOrMany>,
    stokes_order: Option<u32>,
    format: Option<Format>,
    out: Option<PathBuf>,
    tol: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    /// Wave amplitude; repeat for several
    #[arg(long, value_name = "EPS")]
    pub eps: Vec<f64>,
    /// Floquet exponent
    #[arg(long)]
    pub mu: Option<f64>,
    /// Center of the μ-grid (default: μ₀(ε))
    #[arg(long)]
    pub mu_center: Option<f64>,
    /// Full width of the μ-grid (default: 4ε⁴)
    #[arg(long)]
    pub mu_width: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Fourier truncation N (harmonics −N..N); repeat for convergence tables
    #[arg(long = "trunc", value_name = "N")]
    pub trunc: Vec<usize>,
    #[arg(long)]
    pub stokes_order: Option<u32>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file (default: stdout)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Absolute tolerance for golden comparisons
    #[arg(long)]
    pub tol: Option<f64>,
    /// TOML file with the same keys as the flags
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Resolved settings, echoed into JSON output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Settings {
    pub eps: Vec<f64>,
    pub mu: f64,
    pub mu_center: Option<f64>,
    pub mu_width: Option<f64>,
    pub samples: usize,
    pub trunc: Vec<usize>,
    pub stokes_order: u32,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tol: f64,
}

pub struct Defaults {
    pub eps: Vec<f64>,
    pub trunc: Vec<usize>,
}

fn read_file(path: &Path) -> anyhow::Result<FileConfig> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    toml::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())).into())
}

impl SweepArgs {
    pub fn resolve(&self, defaults: Defaults) -> anyhow::Result<Settings> {
        let file = match &self.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let pick_vec = |flag: &Vec<f64>, file: Option<Vec<f64>>, default: Vec<f64>| {
            if !flag.is_empty() {
                flag.clone()
            } else {
                file.unwrap_or(default)
            }
        };
        let file_trunc = file.trunc.map(|t| match t {
            OneOrMany::One(n) => vec![n],
            OneOrMany::Many(v) => v,
        });
        let s = Settings {
            eps: pick_vec(&self.eps, file.eps, defaults.eps),
            mu: self.mu.or(file.mu).unwrap_or(0.25),
            mu_center: self.mu_center.or(file.mu_center),
            mu_width: self.mu_width.or(file.mu_width),
            samples: self.samples.or(file.samples).unwrap_or(200),
            trunc: if self.trunc.is_empty() {
                file_trunc.unwrap_or(defaults.trunc)
            } else {
                self.trunc.clone()
            },
            stokes_order: self.stokes_order.or(file.stokes_order).unwrap_or(4),
            format: self.format.or(file.format).unwrap_or(Format::Csv),
            out: self.out.clone().or(file.out),
            tol: self.tol.or(file.tol).unwrap_or(1e-12),
        };
        s.validate()?;
        Ok(s)
    }
}

impl Settings {
    fn validate(&self) -> Result<(), UsageError> {
        let bad = |m: String| Err(UsageError(m));
        if let Some(e) = self.eps.iter().find(|e| !(e.is_finite() && **e >= 0.0)) {
            return bad(format!("eps must be finite and nonnegative, got {e}"));
        }
        if self.samples < 2 {
            return bad(format!("samples must be at least 2, got {}", self.samples));
        }
        if self.trunc.is_empty() {
            return bad("at least one truncation is required".into());
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return bad(format!("tol must be positive, got {}", self.tol));
        }
        if let Some(w) = self.mu_width.filter(|w| w.is_nan() || *w <= 0.0) {
            return bad(format!("mu-width must be positive, got {w}"));
        }
        if !self.mu.is_finite() {
            return bad("mu must be finite".into());
        }
        Ok(())
    }

    pub fn single_trunc(&self) -> Result<usize, UsageError> {
        match self.trunc.as_slice() {
            [n] => Ok(*n),
            _ => Err(UsageError("this command takes a single --trunc".into())),
        }
    }

    pub fn single_eps(&self) -> Result<f64, UsageError> {
        match self.eps.as_slice() {
            [e] => Ok(*e),
            _ => Err(UsageError("this command takes a single --eps".into())),
        }
    }
}
