//! Project configuration: the domains to analyze, grid resolution, output
//! formats and probe points. JSON is the only accepted format.

use std::collections::HashSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use domaintile_core::{
    performance_from_confusion, ConfusionInput, Domain, DomainSet, NamedScore, TilePoint,
};

pub const DEFAULT_RESOLUTION: usize = 256;
pub const DEFAULT_IMAGE_SIZE: u32 = 512;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("parse error at line {line}, column {column} (field `{path}`): {message}")]
    Parse {
        line: usize,
        column: usize,
        path: String,
        message: String,
    },
    #[error("invalid config: {0}")]
    Validation(String),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Validation(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Png,
    Svg,
    Json,
    Csv,
}

impl Format {
    pub const ALL: [Format; 4] = [Format::Png, Format::Svg, Format::Json, Format::Csv];

    pub fn extension(&self) -> &'static str {
        match self {
            Format::Png => "png",
            Format::Svg => "svg",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "png" => Ok(Format::Png),
            "svg" => Ok(Format::Svg),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(invalid(format!("unknown output format `{other}`"))),
        }
    }
}

/// Parses a comma-separated format list such as `png,svg`.
pub fn parse_formats(list: &str) -> Result<Vec<Format>, ConfigError> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainConfig {
    pub id: String,
    #[serde(default = "one")]
    pub lambda: f64,
    pub confusion: ConfusionInput,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    #[serde(default = "default_resolution")]
    pub resolution: usize,
}

fn default_resolution() -> usize {
    DEFAULT_RESOLUTION
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            resolution: DEFAULT_RESOLUTION,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputsConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directory: Option<PathBuf>,
    #[serde(default = "all_formats")]
    pub formats: Vec<Format>,
    #[serde(default = "default_image_size")]
    pub image_size: u32,
}

fn all_formats() -> Vec<Format> {
    Format::ALL.to_vec()
}

fn default_image_size() -> u32 {
    DEFAULT_IMAGE_SIZE
}

impl Default for OutputsConfig {
    fn default() -> Self {
        Self {
            directory: None,
            formats: all_formats(),
            image_size: DEFAULT_IMAGE_SIZE,
        }
    }
}

/// A probe point, either a named score or explicit coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    Named(String),
    Explicit {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        a: f64,
        b: f64,
    },
}

impl FromStr for PointSpec {
    type Err = ConfigError;

    /// `accuracy`, `TPR`, ... or `a:b` such as `0.3:0.7`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once(':') {
            let parse = |v: &str| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| invalid(format!("bad coordinate in point `{s}`")))
            };
            return Ok(PointSpec::Explicit {
                name: None,
                a: parse(a)?,
                b: parse(b)?,
            });
        }
        Ok(PointSpec::Named(s.to_owned()))
    }
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::Named(n) => f.write_str(n),
            PointSpec::Explicit { name: Some(n), .. } => f.write_str(n),
            PointSpec::Explicit { name: None, a, b } => write!(f, "({a}, {b})"),
        }
    }
}

/// Parses a comma-separated point list such as `accuracy,F1,0.2:0.9`.
pub fn parse_points(list: &str) -> Result<Vec<PointSpec>, ConfigError> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect()
}

fn default_points() -> Vec<PointSpec> {
    NamedScore::ALL
        .iter()
        .map(|s| PointSpec::Named(s.name().to_owned()))
        .collect()
}

/// A resolved probe point.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbePoint {
    pub label: String,
    pub point: TilePoint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectConfig {
    pub domains: Vec<DomainConfig>,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub outputs: OutputsConfig,
    #[serde(default = "default_points")]
    pub points: Vec<PointSpec>,
}

/// Parses and validates a JSON config.
pub fn parse_config(text: &str) -> Result<ProjectConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let config: ProjectConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ConfigError::Parse {
            line: inner.line(),
            column: inner.column(),
            path,
            message: inner.to_string(),
        }
    })?;
    config.validate()?;
    Ok(config)
}

impl ProjectConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.domains.is_empty() {
            return Err(invalid("at least one domain is required"));
        }
        let mut ids = HashSet::new();
        for d in &self.domains {
            if d.id.is_empty() {
                return Err(invalid("domain ids must be non-empty"));
            }
            if !ids.insert(d.id.as_str()) {
                return Err(invalid(format!("duplicate domain id `{}`", d.id)));
            }
            if !(d.lambda.is_finite() && d.lambda >= 0.0) {
                return Err(invalid(format!(
                    "domain `{}`: lambda must be a finite non-negative number, got {}",
                    d.id, d.lambda
                )));
            }
            performance_from_confusion(&d.confusion)
                .map_err(|e| invalid(format!("domain `{}`: confusion matrix: {e}", d.id)))?;
        }
        if self.domains.iter().map(|d| d.lambda).sum::<f64>() <= 0.0 {
            return Err(invalid("domain lambdas must have a positive total"));
        }
        if self.grid.resolution < 2 {
            return Err(invalid(format!(
                "grid resolution must be at least 2, got {}",
                self.grid.resolution
            )));
        }
        if self.outputs.image_size == 0 {
            return Err(invalid("image size must be positive"));
        }
        self.probe_points()?;
        Ok(())
    }

    pub fn domain_set(&self) -> Result<DomainSet, ConfigError> {
        let domains = self
            .domains
            .iter()
            .map(|d| {
                let p = performance_from_confusion(&d.confusion)
                    .map_err(|e| invalid(format!("domain `{}`: {e}", d.id)))?;
                Ok(Domain::new(d.id.clone(), d.lambda, p))
            })
            .collect::<Result<Vec<_>, ConfigError>>()?;
        DomainSet::new(domains).map_err(|e| invalid(e.to_string()))
    }

    pub fn probe_points(&self) -> Result<Vec<ProbePoint>, ConfigError> {
        self.points
            .iter()
            .map(|spec| match spec {
                PointSpec::Named(name) => {
                    let score: NamedScore = name.parse().map_err(invalid)?;
                    Ok(ProbePoint {
                        label: score.name().to_owned(),
                        point: score.point(),
                    })
                }
                PointSpec::Explicit { a, b, .. } => {
                    let point = TilePoint::new(*a, *b)
                        .map_err(|e| invalid(format!("point {spec}: {e}")))?;
                    Ok(ProbePoint {
                        label: spec.to_string(),
                        point,
                    })
                }
            })
            .collect()
    }

    pub fn formats(&self) -> Vec<Format> {
        let mut f = self.outputs.formats.clone();
        f.sort();
        f.dedup();
        f
    }

    pub fn with_resolution(mut self, n: usize) -> Result<Self, ConfigError> {
        self.grid.resolution = n;
        self.validate()?;
        Ok(self)
    }

    pub fn with_formats(mut self, formats: Vec<Format>) -> Self {
        self.outputs.formats = formats;
        self
    }

    pub fn with_points(mut self, points: Vec<PointSpec>) -> Result<Self, ConfigError> {
        self.points = points;
        self.validate()?;
        Ok(self)
    }
}
