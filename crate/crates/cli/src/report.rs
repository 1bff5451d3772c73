//! Serializable outputs of the `summarize`, `analyze` and `tiles` commands.

use serde::Serialize;

use domaintile_core::{ConfusionInput, DomainSet, Selection};

use crate::config::{DomainConfig, GridConfig, OutputsConfig, ProjectConfig};

pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Only place where run-dependent data (timestamp) lives.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportHeader {
    pub tool: &'static str,
    pub version: &'static str,
    pub generated_unix_seconds: u64,
}

impl ReportHeader {
    pub fn now() -> Self {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            tool: TOOL_NAME,
            version: TOOL_VERSION,
            generated_unix_seconds: secs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainValue {
    pub id: String,
    pub value: Option<f64>,
}

/// Result of one computation at one probe point; failures are recorded
/// instead of aborting the run.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome<T> {
    Ok(T),
    Error(String),
}

impl<T> Outcome<T> {
    pub fn from_result<E: std::fmt::Display>(r: Result<T, E>) -> Self {
        match r {
            Ok(v) => Outcome::Ok(v),
            Err(e) => Outcome::Error(e.to_string()),
        }
    }

    pub fn ok(&self) -> Option<&T> {
        match self {
            Outcome::Ok(v) => Some(v),
            Outcome::Error(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionReport {
    pub winner: String,
    pub tie_set: Vec<String>,
    pub is_tie: bool,
    pub criterion: Vec<DomainValue>,
}

impl SelectionReport {
    pub fn new(domains: &DomainSet, s: &Selection) -> Self {
        Self {
            winner: s.winner().to_owned(),
            tie_set: s.tie_set().to_vec(),
            is_tie: s.is_tie(),
            criterion: domains
                .ids()
                .zip(s.criterion_values())
                .map(|(id, v)| DomainValue {
                    id: id.to_owned(),
                    value: *v,
                })
                .collect(),
        }
    }

    /// `TIE{a,b}` for ties, otherwise the winner id.
    pub fn short(&self) -> String {
        if self.is_tie {
            format!("TIE{{{}}}", self.tie_set.join(","))
        } else {
            self.winner.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointReport {
    pub label: String,
    pub a: f64,
    pub b: f64,
    /// Canonical ranking score of every domain at this point.
    pub scores: Vec<DomainValue>,
    pub summarized_score: Option<f64>,
    pub weights: Outcome<Vec<DomainValue>>,
    pub easiest: Outcome<SelectionReport>,
    pub most_difficult: Outcome<SelectionReport>,
    pub preponderant: Outcome<SelectionReport>,
    pub bottleneck: Outcome<SelectionReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DomainWeight {
    pub id: String,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub header: ReportHeader,
    /// The validated configuration the report was computed from.
    pub inputs: ProjectConfig,
    pub domain_order: Vec<String>,
    pub summarized: ConfusionInput,
    pub points: Vec<PointReport>,
    /// Flavor tile artifacts, when rendered alongside the analysis.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tiles: Vec<String>,
}

/// Output of `summarize`. It is itself a valid single-domain config, so it
/// can be fed back to any command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryDocument {
    pub domains: Vec<DomainConfig>,
    pub grid: GridConfig,
    pub outputs: OutputsConfig,
    pub sources: Vec<DomainWeight>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TileEntry {
    pub name: String,
    pub flavor: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    pub files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedTile {
    pub name: String,
    pub reason: String,
}

/// Index of everything written by `tiles`. Contains no timestamps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TileManifest {
    pub resolution: usize,
    pub axis_convention: &'static str,
    pub domain_order: Vec<String>,
    pub formats: Vec<String>,
    pub tiles: Vec<TileEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<SkippedTile>,
}

impl TileManifest {
    pub fn files(&self) -> impl Iterator<Item = &str> {
        self.tiles
            .iter()
            .flat_map(|t| t.files.iter().map(String::as_str))
    }
}
