use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use domaintile_cli::config::{parse_formats, parse_points};
use domaintile_cli::report::{Outcome, SelectionReport};
use domaintile_cli::{
    cmd_analyze, cmd_summarize, cmd_tiles, parse_config, ProjectConfig, DEFAULT_OUT_DIR,
    OUT_DIR_ENV,
};

#[derive(Parser)]
#[command(
    name = "domaintile",
    version,
    about = "Multi-domain performance analysis on the Tile"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Average the domain performances and write summary.json / summary.csv.
    Summarize(Common),
    /// Evaluate scores, weights and domain selections at probe points.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Also render all tiles and list the flavor tiles in the report.
        #[arg(long)]
        tiles: bool,
    },
    /// Render value, weight and flavor tiles.
    Tiles(Common),
}

#[derive(Args)]
struct Common {
    /// JSON project configuration.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Output directory (overrides the config and the environment).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Grid resolution N of the N×N tiles.
    #[arg(long, value_name = "N")]
    resolution: Option<usize>,
    /// Comma-separated subset of png,svg,json,csv.
    #[arg(long, value_name = "LIST")]
    formats: Option<String>,
    /// Comma-separated probe points: score names or a:b pairs.
    #[arg(long, value_name = "LIST")]
    points: Option<String>,
}

impl Common {
    fn load(&self) -> Result<(ProjectConfig, PathBuf)> {
        let text = std::fs::read_to_string(&self.config)
            .with_context(|| format!("reading {}", self.config.display()))?;
        let mut config =
            parse_config(&text).with_context(|| format!("loading {}", self.config.display()))?;
        if let Some(n) = self.resolution {
            config = config.with_resolution(n)?;
        }
        if let Some(list) = &self.formats {
            config = config.with_formats(parse_formats(list)?);
        }
        if let Some(list) = &self.points {
            config = config.with_points(parse_points(list)?)?;
        }
        let out = self
            .out
            .clone()
            .or_else(|| config.outputs.directory.clone())
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
        Ok((config, out))
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Summarize(common) => {
            let (config, out) = common.load()?;
            let (summary, _) = cmd_summarize(&config, &out)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
        Command::Analyze { common, tiles } => {
            let (config, out) = common.load()?;
            let (report, written) = cmd_analyze(&config, &out, tiles)?;
            for p in &report.points {
                let cell = |o: &Outcome<SelectionReport>| match o {
                    Outcome::Ok(s) => s.short(),
                    Outcome::Error(e) => format!("error ({e})"),
                };
                println!(
                    "{:<12} easiest={} most_difficult={} preponderant={} bottleneck={}",
                    p.label,
                    cell(&p.easiest),
                    cell(&p.most_difficult),
                    cell(&p.preponderant),
                    cell(&p.bottleneck)
                );
            }
            eprintln!("wrote {} files to {}", written.files.len(), out.display());
        }
        Command::Tiles(common) => {
            let (config, out) = common.load()?;
            let (manifest, written) = cmd_tiles(&config, &out)?;
            for s in &manifest.skipped {
                eprintln!("skipped {}: {}", s.name, s.reason);
            }
            eprintln!(
                "wrote {} tiles ({} files) to {}",
                manifest.tiles.len(),
                written.files.len(),
                out.display()
            );
        }
    }
    Ok(())
}
