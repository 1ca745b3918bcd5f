use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::bayes::NaiveBayesConfig;
use crate::error::{Error, Result};
use crate::mlp::{MlpConfig, OutputNorm};
use crate::tree::C45Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[serde(rename = "nb")]
    NaiveBayes,
    Mlp,
    J48,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::NaiveBayes, Algorithm::Mlp, Algorithm::J48];

    /// Command-line key.
    pub fn key(self) -> &'static str {
        match self {
            Algorithm::NaiveBayes => "nb",
            Algorithm::Mlp => "mlp",
            Algorithm::J48 => "j48",
        }
    }

    /// Report column heading.
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::NaiveBayes => "Naive Bayes",
            Algorithm::Mlp => "MLP",
            Algorithm::J48 => "J48",
        }
    }

    /// Parses `nb`, `mlp`, `j48` or `all`.
    pub fn parse_selector(s: &str) -> Result<Vec<Algorithm>> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nb" => Ok(vec![Algorithm::NaiveBayes]),
            "mlp" => Ok(vec![Algorithm::Mlp]),
            "j48" => Ok(vec![Algorithm::J48]),
            "all" => Ok(Algorithm::ALL.to_vec()),
            other => Err(Error::Config(format!("unknown algorithm '{other}'"))),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MissingMode {
    /// Remove instances with unknown age.
    #[default]
    Drop,
    /// Keep them; each learner handles the gap itself.
    Raw,
}

impl MissingMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "drop" => Ok(MissingMode::Drop),
            "raw" => Ok(MissingMode::Raw),
            other => Err(Error::Config(format!("unknown missing mode '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(OutputFormat::Markdown),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown output format '{other}'"))),
        }
    }
}

/// Hyperparameters for every learner. The MLP seed is replaced per fold.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ModelConfigs {
    pub bayes: NaiveBayesConfig,
    pub mlp: MlpConfig,
    pub tree: C45Config,
}

impl ModelConfigs {
    /// Applies `key = value` lines. Blank lines and `#` comments are
    /// ignored. Recognised keys:
    ///
    /// `bayes.variance_floor`, `mlp.hidden_units`, `mlp.learning_rate`,
    /// `mlp.momentum`, `mlp.epochs`, `mlp.init_range`, `mlp.output`,
    /// `j48.confidence`, `j48.min_leaf`, `j48.prune`.
    pub fn apply_overrides(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::format("config", no, "expected key = value"))?;
            let bad = || Error::format("config", no, format!("bad value '{value}' for {key}"));
            fn num<N: std::str::FromStr>(v: &str, bad: impl Fn() -> Error) -> Result<N> {
                v.parse().map_err(|_| bad())
            }
            match key {
                "bayes.variance_floor" => self.bayes.variance_floor = num(value, bad)?,
                "mlp.hidden_units" => self.mlp.hidden_units = num(value, bad)?,
                "mlp.learning_rate" => self.mlp.learning_rate = num(value, bad)?,
                "mlp.momentum" => self.mlp.momentum = num(value, bad)?,
                "mlp.epochs" => self.mlp.epochs = num(value, bad)?,
                "mlp.init_range" => self.mlp.init_range = num(value, bad)?,
                "mlp.output" => self.mlp.output = OutputNorm::parse(value).ok_or_else(bad)?,
                "j48.confidence" => self.tree.confidence = num(value, bad)?,
                "j48.min_leaf" => self.tree.min_leaf = num(value, bad)?,
                "j48.prune" => self.tree.prune = num(value, bad)?,
                _ => return Err(Error::format("config", no, format!("unknown key '{key}'"))),
            }
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        if !self.bayes.variance_floor.is_finite() || self.bayes.variance_floor <= 0.0 {
            return Err(Error::Config("variance floor must be positive".into()));
        }
        self.mlp.validate()?;
        self.tree.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub data: PathBuf,
    pub algorithms: Vec<Algorithm>,
    pub folds: usize,
    pub seed: u64,
    pub missing: MissingMode,
    pub models: ModelConfigs,
    pub format: OutputFormat,
    pub emit_trace: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(data: impl Into<PathBuf>) -> Self {
        ExperimentConfig {
            data: data.into(),
            algorithms: Algorithm::ALL.to_vec(),
            folds: 10,
            seed: 1,
            missing: MissingMode::Drop,
            models: ModelConfigs::default(),
            format: OutputFormat::Markdown,
            emit_trace: None,
        }
    }

    pub fn load_overrides(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        self.models.apply_overrides(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.folds < 2 {
            return Err(Error::Config(format!(
                "need at least 2 folds, got {}",
                self.folds
            )));
        }
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithm selected".into()));
        }
        self.models.validate()
    }
}
