//! Library half of the `domaintile` command-line tool: configuration
//! parsing, analysis reports and artifact writers.

pub mod commands;
pub mod config;
pub mod report;

pub use commands::{
    analyze_config, cmd_analyze, cmd_summarize, cmd_tiles, compute_tiles, summarize_config,
};
pub use config::{parse_config, ConfigError, Format, PointSpec, ProjectConfig};
pub use report::{AnalysisReport, SummaryDocument, TileManifest};

/// Environment variable naming the output directory when neither `--out`
/// nor the config sets one.
pub const OUT_DIR_ENV: &str = "DOMAINTILE_OUT_DIR";
pub const DEFAULT_OUT_DIR: &str = "domaintile-out";
