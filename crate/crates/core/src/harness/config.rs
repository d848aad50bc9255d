use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::Config(format!("unknown format `{other}` (json, csv, text)"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub pmax: u64,
    /// Largest `p` for sweeps over `F_{p^2}`.
    pub ext_pmax: u64,
    pub tol: f64,
    /// `None`: rayon's default pool; `Some(1)`: sequential.
    pub threads: Option<usize>,
    pub format: OutputFormat,
    /// Seed for the randomized suites.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { pmax: 200, ext_pmax: 17, tol: 1e-6, threads: None, format: OutputFormat::Json, seed: 20_160_817 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pmax < 3 {
            return Err(Error::Config(format!("pmax = {} must be at least 3", self.pmax)));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Config(format!("tol = {} must be positive", self.tol)));
        }
        if self.threads == Some(0) {
            return Err(Error::Config("threads must be at least 1".into()));
        }
        Ok(())
    }

    pub fn apply(&mut self, patch: &ConfigPatch) {
        if let Some(v) = patch.pmax {
            self.pmax = v;
        }
        if let Some(v) = patch.ext_pmax {
            self.ext_pmax = v;
        }
        if let Some(v) = patch.tol {
            self.tol = v;
        }
        if let Some(v) = patch.threads {
            self.threads = Some(v);
        }
        if let Some(v) = patch.format {
            self.format = v;
        }
        if let Some(v) = patch.seed {
            self.seed = v;
        }
    }
}

/// Partial settings from a config file or from command-line flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigPatch {
    pub pmax: Option<u64>,
    pub ext_pmax: Option<u64>,
    pub tol: Option<f64>,
    pub threads: Option<usize>,
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
}

fn parse_value<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value.parse().map_err(|_| Error::Config(format!("line {line}: bad value `{value}` for `{key}`")))
}

impl ConfigPatch {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut patch = ConfigPatch::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let n = i + 1;
            let (key, value) =
                line.split_once('=').ok_or_else(|| Error::Config(format!("line {n}: expected key = value")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "pmax" => patch.pmax = Some(parse_value(key, value, n)?),
                "ext_pmax" => patch.ext_pmax = Some(parse_value(key, value, n)?),
                "tol" => patch.tol = Some(parse_value(key, value, n)?),
                "threads" => patch.threads = Some(parse_value(key, value, n)?),
                "format" => patch.format = Some(value.parse()?),
                "seed" => patch.seed = Some(parse_value(key, value, n)?),
                other => return Err(Error::Config(format!("line {n}: unknown key `{other}`"))),
            }
        }
        Ok(patch)
    }
}
