//! The three commands. Each has a pure part returning data and a writer that
//! puts artifacts on disk.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use domaintile_core::tile::AXIS_CONVENTION;
use domaintile_core::{
    canonical_importance, canonical_score_value, encode_png, encode_svg, flavor_tile, summarize,
    value_tile, weight_tiles, weights_for_ranking_score, ConfusionInput, DomainSet, Flavor,
    RenderStyle, Sidecar, TileGrid,
};

use crate::config::{DomainConfig, Format, ProjectConfig};
use crate::report::{
    AnalysisReport, DomainValue, DomainWeight, Outcome, PointReport, ReportHeader, SelectionReport,
    SkippedTile, SummaryDocument, TileEntry, TileManifest,
};

pub const SUMMARY_ID: &str = "summary";

/// Files written by one command, relative to the output directory.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Written {
    pub files: Vec<PathBuf>,
}

fn write_file(dir: &Path, name: &str, bytes: &[u8], written: &mut Written) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    written.files.push(PathBuf::from(name));
    Ok(())
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

// ---------------------------------------------------------------- summarize

pub fn summarize_config(config: &ProjectConfig) -> Result<SummaryDocument> {
    let set = config.domain_set()?;
    let bar = summarize(&set);
    Ok(SummaryDocument {
        domains: vec![DomainConfig {
            id: SUMMARY_ID.to_owned(),
            lambda: 1.0,
            confusion: ConfusionInput::from_performance(&bar)?,
        }],
        grid: config.grid.clone(),
        outputs: config.outputs.clone(),
        sources: config
            .domains
            .iter()
            .map(|d| DomainWeight {
                id: d.id.clone(),
                lambda: d.lambda,
            })
            .collect(),
    })
}

/// CSV with one row per normalized domain matrix followed by the summary row.
pub fn summary_csv(config: &ProjectConfig, summary: &SummaryDocument) -> Result<Vec<u8>> {
    let set = config.domain_set()?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "lambda", "tn", "fp", "fn", "tp"])?;
    for d in &set {
        let m = d.performance().masses();
        w.write_record(
            [d.id().to_owned(), d.weight().to_string()]
                .into_iter()
                .chain(m.iter().map(f64::to_string)),
        )?;
    }
    let c = summary.domains[0].confusion.as_array();
    w.write_record(
        [SUMMARY_ID.to_owned(), String::new()]
            .into_iter()
            .chain(c.iter().map(f64::to_string)),
    )?;
    Ok(w.into_inner()?)
}

/// Writes `summary.json` and `summary.csv`.
pub fn cmd_summarize(config: &ProjectConfig, out: &Path) -> Result<(SummaryDocument, Written)> {
    let summary = summarize_config(config)?;
    ensure_dir(out)?;
    let mut written = Written::default();
    write_file(out, "summary.json", &to_json(&summary)?, &mut written)?;
    write_file(
        out,
        "summary.csv",
        &summary_csv(config, &summary)?,
        &mut written,
    )?;
    Ok((summary, written))
}

// ------------------------------------------------------------------ analyze

fn selection(
    set: &DomainSet,
    r: domaintile_core::Result<domaintile_core::Selection>,
) -> Outcome<SelectionReport> {
    Outcome::from_result(r.map(|s| SelectionReport::new(set, &s)))
}

/// Evaluates every probe point. Errors of individual selectors are recorded
/// in the report and do not fail the call.
pub fn analyze_config(config: &ProjectConfig) -> Result<AnalysisReport> {
    let set = config.domain_set()?;
    let bar = summarize(&set);
    let ids: Vec<String> = set.ids().map(str::to_owned).collect();

    let mut points = Vec::new();
    for probe in config.probe_points()? {
        let importance = canonical_importance(probe.point)?;
        let scores = set
            .iter()
            .map(|d| DomainValue {
                id: d.id().to_owned(),
                value: canonical_score_value(d.performance(), probe.point).ok(),
            })
            .collect();
        let weights = Outcome::from_result(weights_for_ranking_score(&set, &importance).map(|w| {
            ids.iter()
                .zip(w.as_slice())
                .map(|(id, v)| DomainValue {
                    id: id.clone(),
                    value: Some(*v),
                })
                .collect()
        }));
        let pick = |f: Flavor| selection(&set, f.select(&set, &importance));
        points.push(PointReport {
            label: probe.label,
            a: probe.point.a(),
            b: probe.point.b(),
            scores,
            summarized_score: canonical_score_value(&bar, probe.point).ok(),
            weights,
            easiest: pick(Flavor::Easiest),
            most_difficult: pick(Flavor::MostDifficult),
            preponderant: pick(Flavor::Preponderant),
            bottleneck: pick(Flavor::Bottleneck),
        });
    }

    Ok(AnalysisReport {
        header: ReportHeader::now(),
        inputs: config.clone(),
        domain_order: ids,
        summarized: ConfusionInput::from_performance(&bar)?,
        points,
        tiles: Vec::new(),
    })
}

fn outcome_cell(o: &Outcome<SelectionReport>) -> String {
    match o {
        Outcome::Ok(s) => s.short(),
        Outcome::Error(e) => format!("error: {e}"),
    }
}

/// One row per probe point with the four selections.
pub fn analysis_csv(report: &AnalysisReport) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "point",
        "a",
        "b",
        "summarized_score",
        "easiest",
        "most_difficult",
        "preponderant",
        "bottleneck",
    ])?;
    for p in &report.points {
        w.write_record([
            p.label.clone(),
            p.a.to_string(),
            p.b.to_string(),
            p.summarized_score
                .map(|v| v.to_string())
                .unwrap_or_default(),
            outcome_cell(&p.easiest),
            outcome_cell(&p.most_difficult),
            outcome_cell(&p.preponderant),
            outcome_cell(&p.bottleneck),
        ])?;
    }
    Ok(w.into_inner()?)
}

/// Writes `report.json` and `analysis.csv`; with `with_tiles`, also renders
/// the tiles and records the flavor tile paths in the report.
pub fn cmd_analyze(
    config: &ProjectConfig,
    out: &Path,
    with_tiles: bool,
) -> Result<(AnalysisReport, Written)> {
    let mut report = analyze_config(config)?;
    ensure_dir(out)?;
    let mut written = Written::default();
    if with_tiles {
        let (manifest, tiles_written) = cmd_tiles(config, out)?;
        report.tiles = manifest
            .tiles
            .iter()
            .filter(|t| t.flavor != "value" && t.flavor != "weight")
            .flat_map(|t| t.files.iter().cloned())
            .collect();
        written.files.extend(tiles_written.files);
    }
    write_file(out, "report.json", &to_json(&report)?, &mut written)?;
    write_file(out, "analysis.csv", &analysis_csv(&report)?, &mut written)?;
    Ok((report, written))
}

// -------------------------------------------------------------------- tiles

/// Turns a domain id into a file-name fragment.
fn file_stem(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Distinct file stems for the domains, in declaration order.
fn domain_stems(set: &DomainSet) -> Vec<String> {
    let mut stems: Vec<String> = Vec::with_capacity(set.len());
    for (i, id) in set.ids().enumerate() {
        let mut stem = file_stem(id);
        if stem == SUMMARY_ID || stems.contains(&stem) {
            stem = format!("{stem}-{i}");
        }
        stems.push(stem);
    }
    stems
}

/// A tile ready to be written.
pub struct NamedTile {
    pub name: String,
    pub flavor: String,
    pub domain: Option<String>,
    pub grid: TileGrid,
}

/// Computes every tile: a Value Tile for the summarized performance and for
/// each domain, a Summarization Weight Tile per domain, and the four flavor
/// tiles. Flavors that cannot be computed are returned as skipped.
pub fn compute_tiles(set: &DomainSet, n: usize) -> Result<(Vec<NamedTile>, Vec<SkippedTile>)> {
    let stems = domain_stems(set);
    let mut tiles = vec![NamedTile {
        name: format!("value_{SUMMARY_ID}"),
        flavor: "value".into(),
        domain: None,
        grid: value_tile(&summarize(set), n)?,
    }];
    for (d, stem) in set.iter().zip(&stems) {
        tiles.push(NamedTile {
            name: format!("value_{stem}"),
            flavor: "value".into(),
            domain: Some(d.id().to_owned()),
            grid: value_tile(d.performance(), n)?,
        });
    }
    for ((d, stem), grid) in set.iter().zip(&stems).zip(weight_tiles(set, n)?) {
        tiles.push(NamedTile {
            name: format!("weight_{stem}"),
            flavor: "weight".into(),
            domain: Some(d.id().to_owned()),
            grid,
        });
    }
    let mut skipped = Vec::new();
    for flavor in Flavor::ALL {
        let name = format!("flavor_{}", flavor.name());
        match flavor_tile(set, flavor, n) {
            Ok(grid) => tiles.push(NamedTile {
                name,
                flavor: flavor.name().into(),
                domain: None,
                grid,
            }),
            Err(e) => skipped.push(SkippedTile {
                name,
                reason: e.to_string(),
            }),
        }
    }
    Ok((tiles, skipped))
}

/// Grid as CSV: one line per image row, empty field for undefined scalars.
fn grid_csv(grid: &TileGrid) -> Result<Vec<u8>> {
    let n = grid.resolution();
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    match (grid.scalar_values(), grid.categories()) {
        (Some(values), _) => {
            for row in values.chunks(n) {
                w.write_record(
                    row.iter()
                        .map(|v| v.map(|x| x.to_string()).unwrap_or_default()),
                )?;
            }
        }
        (None, Some(ids)) => {
            for row in ids.chunks(n) {
                w.write_record(row.iter().map(i32::to_string))?;
            }
        }
        (None, None) => unreachable!("a grid is either scalar or categorical"),
    }
    Ok(w.into_inner()?)
}

/// Renders every tile into `out` and writes `manifest.json`.
pub fn cmd_tiles(config: &ProjectConfig, out: &Path) -> Result<(TileManifest, Written)> {
    let set = config.domain_set()?;
    let n = config.grid.resolution;
    let formats = config.formats();
    let style = RenderStyle::default().with_image_size(config.outputs.image_size)?;
    let order: Vec<String> = set.ids().map(str::to_owned).collect();

    let (tiles, skipped) = compute_tiles(&set, n)?;
    ensure_dir(out)?;
    let mut written = Written::default();
    let mut entries = Vec::with_capacity(tiles.len());
    for tile in &tiles {
        let mut files = Vec::new();
        let mut put = |ext: &str, bytes: Vec<u8>, written: &mut Written| -> Result<()> {
            let file = format!("{}.{ext}", tile.name);
            write_file(out, &file, &bytes, written)?;
            files.push(file);
            Ok(())
        };
        for format in &formats {
            match format {
                Format::Png => put("png", encode_png(&tile.grid, &style)?, &mut written)?,
                Format::Svg => put(
                    "svg",
                    encode_svg(&tile.grid, &style)?.into_bytes(),
                    &mut written,
                )?,
                Format::Json => put("grid.json", to_json(&tile.grid)?, &mut written)?,
                Format::Csv => put("csv", grid_csv(&tile.grid)?, &mut written)?,
            }
        }
        if formats
            .iter()
            .any(|f| matches!(f, Format::Png | Format::Svg))
        {
            let sidecar = Sidecar::new(
                tile.name.clone(),
                tile.flavor.clone(),
                tile.domain.clone(),
                &tile.grid,
                order.clone(),
                &style,
            );
            put("meta.json", to_json(&sidecar)?, &mut written)?;
        }
        entries.push(TileEntry {
            name: tile.name.clone(),
            flavor: tile.flavor.clone(),
            domain: tile.domain.clone(),
            files,
        });
    }

    let manifest = TileManifest {
        resolution: n,
        axis_convention: AXIS_CONVENTION,
        domain_order: order,
        formats: formats.iter().map(|f| f.extension().to_owned()).collect(),
        tiles: entries,
        skipped,
    };
    write_file(out, "manifest.json", &to_json(&manifest)?, &mut written)?;
    Ok((manifest, written))
}
