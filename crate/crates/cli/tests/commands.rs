use std::fs;
use std::path::Path;
use std::process::Command;

use domaintile_cli::report::Outcome;
use domaintile_cli::{
    analyze_config, cmd_analyze, cmd_summarize, cmd_tiles, parse_config, Format, ProjectConfig,
    OUT_DIR_ENV,
};
use domaintile_core::{summarize, value_tile};

const THREE_DOMAINS: &str = r#"{
    "domains": [
        {"id": "d1", "confusion": {"tn": 0.02, "fp": 0.12, "fn": 0.01, "tp": 0.85}},
        {"id": "d2", "confusion": {"tn": 0.68, "fp": 0.08, "fn": 0.10, "tp": 0.14}},
        {"id": "d3", "confusion": {"tn": 0.41, "fp": 0.19, "fn": 0.10, "tp": 0.30}}
    ],
    "grid": {"resolution": 16},
    "outputs": {"image_size": 64}
}"#;

fn three_domain() -> ProjectConfig {
    parse_config(THREE_DOMAINS).unwrap()
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn summarize_three_domain_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (summary, written) = cmd_summarize(&three_domain(), dir.path()).unwrap();
    assert!(close(
        &summary.domains[0].confusion.as_array(),
        &[0.37, 0.13, 0.07, 0.43],
        1e-12
    ));
    assert_eq!(written.files.len(), 2);
    let csv = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert!(csv.starts_with("id,lambda,tn,fp,fn,tp\n"));
    assert_eq!(csv.lines().count(), 5);
    let json: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(json["sources"][2]["id"], "d3");
}

#[test]
fn summarize_single_domain_and_counts() {
    let dir = tempfile::tempdir().unwrap();
    let one = parse_config(
        r#"{"domains": [{"id": "x", "confusion": {"tn": 37, "fp": 13, "fn": 7, "tp": 43}}]}"#,
    )
    .unwrap();
    let (summary, _) = cmd_summarize(&one, dir.path()).unwrap();
    assert!(close(
        &summary.domains[0].confusion.as_array(),
        &[0.37, 0.13, 0.07, 0.43],
        1e-15
    ));
}

#[test]
fn summary_round_trips_into_identical_value_tiles() {
    let dir = tempfile::tempdir().unwrap();
    let config = three_domain();
    cmd_summarize(&config, dir.path()).unwrap();
    let again =
        parse_config(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    let set = again.domain_set().unwrap();
    assert_eq!(set.len(), 1);

    let original = value_tile(&summarize(&config.domain_set().unwrap()), 32).unwrap();
    let reloaded = value_tile(set[0].performance(), 32).unwrap();
    for (x, y) in original
        .scalar_values()
        .unwrap()
        .iter()
        .zip(reloaded.scalar_values().unwrap())
    {
        assert!((x.unwrap() - y.unwrap()).abs() <= 1e-15);
    }
}

#[test]
fn analyze_three_domain_probe_points() {
    let config = three_domain()
        .with_points(vec!["accuracy".parse().unwrap(), "1:1".parse().unwrap()])
        .unwrap();
    let report = analyze_config(&config).unwrap();
    let acc = &report.points[0];
    assert_eq!(acc.label, "accuracy");
    assert_eq!(acc.easiest.ok().unwrap().short(), "d1");
    assert_eq!(acc.most_difficult.ok().unwrap().short(), "d3");
    assert_eq!(acc.preponderant.ok().unwrap().short(), "TIE{d1,d2,d3}");
    assert_eq!(acc.bottleneck.ok().unwrap().short(), "d3");
    assert!((acc.summarized_score.unwrap() - 0.80).abs() < 1e-12);

    let corner = &report.points[1];
    assert_eq!(corner.easiest.ok().unwrap().winner, "d1");
    assert_eq!(corner.most_difficult.ok().unwrap().winner, "d2");
    assert_eq!(corner.preponderant.ok().unwrap().winner, "d1");

    for p in &report.points {
        let Outcome::Ok(w) = &p.weights else {
            panic!("weights")
        };
        let sum: f64 = w.iter().map(|d| d.value.unwrap()).sum();
        assert!((sum - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn analyze_single_domain_reports_bottleneck_error() {
    let config = parse_config(
        r#"{"domains": [{"id": "x", "confusion": {"tn": 5, "fp": 1, "fn": 2, "tp": 4}}]}"#,
    )
    .unwrap();
    let report = analyze_config(&config).unwrap();
    assert_eq!(report.points.len(), 6);
    for p in &report.points {
        assert!(matches!(&p.bottleneck, Outcome::Error(m) if m.contains("at least 2 domains")));
        assert_eq!(p.easiest.ok().unwrap().winner, "x");
        assert_eq!(p.preponderant.ok().unwrap().winner, "x");
    }
}

#[test]
fn analyze_reports_undefined_scores_per_point() {
    // "neg" has no positives, so TPR is undefined there.
    let config = parse_config(
        r#"{"domains": [
            {"id": "neg", "confusion": {"tn": 5, "fp": 1, "fn": 0, "tp": 0}},
            {"id": "mix", "confusion": {"tn": 5, "fp": 1, "fn": 2, "tp": 4}}
        ], "points": ["TPR", "accuracy"]}"#,
    )
    .unwrap();
    let report = analyze_config(&config).unwrap();
    assert!(matches!(&report.points[0].easiest, Outcome::Error(m) if m.contains("neg")));
    assert_eq!(report.points[0].scores[0].value, None);
    assert!(report.points[1].easiest.ok().is_some());
}

fn strip_header(mut v: serde_json::Value) -> serde_json::Value {
    v.as_object_mut().unwrap().remove("header");
    v
}

#[test]
fn analyze_is_reproducible_from_its_own_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let (_, written) = cmd_analyze(&three_domain(), dir.path(), false).unwrap();
    assert_eq!(written.files.len(), 2);
    let first: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.path().join("report.json")).unwrap()).unwrap();
    let inputs = serde_json::to_string(&first["inputs"]).unwrap();
    let second = analyze_config(&parse_config(&inputs).unwrap()).unwrap();
    assert_eq!(
        strip_header(first),
        strip_header(serde_json::to_value(&second).unwrap())
    );
    let csv = fs::read_to_string(dir.path().join("analysis.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("accuracy,0.5,0.5,"));
}

#[test]
fn analyze_with_tiles_lists_flavor_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let config = three_domain().with_formats(vec![Format::Png]);
    let (report, _) = cmd_analyze(&config, dir.path(), true).unwrap();
    // four flavors, each a png plus its sidecar
    assert_eq!(report.tiles.len(), 8);
    assert!(report.tiles.contains(&"flavor_bottleneck.png".to_owned()));
    for f in &report.tiles {
        assert!(dir.path().join(f).is_file());
    }
}

fn count_ext(dir: &Path, suffix: &str) -> usize {
    fs::read_dir(dir)
        .unwrap()
        .filter(|e| {
            e.as_ref()
                .unwrap()
                .file_name()
                .to_string_lossy()
                .ends_with(suffix)
        })
        .count()
}

#[test]
fn tiles_png_svg_eleven_images() {
    let dir = tempfile::tempdir().unwrap();
    let config = three_domain()
        .with_resolution(64)
        .unwrap()
        .with_formats(vec![Format::Png, Format::Svg]);
    let (manifest, _) = cmd_tiles(&config, dir.path()).unwrap();
    assert_eq!(manifest.tiles.len(), 11);
    assert!(manifest.skipped.is_empty());
    assert_eq!(count_ext(dir.path(), ".png"), 11);
    assert_eq!(count_ext(dir.path(), ".svg"), 11);
    assert_eq!(count_ext(dir.path(), ".meta.json"), 11);
    assert_eq!(count_ext(dir.path(), ".grid.json"), 0);
    for f in manifest.files() {
        assert!(dir.path().join(f).is_file(), "{f}");
    }

    let bytes = fs::read(dir.path().join("flavor_easiest.png")).unwrap();
    let reader = png::Decoder::new(std::io::Cursor::new(bytes))
        .read_info()
        .unwrap();
    assert_eq!((reader.info().width, reader.info().height), (64, 64));

    let svg = fs::read_to_string(dir.path().join("weight_d1.svg")).unwrap();
    assert_eq!(svg.matches("<rect").count(), 64 * 64 + 1);

    let meta: serde_json::Value = serde_json::from_slice(
        &fs::read(dir.path().join("flavor_preponderant.meta.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(meta["flavor"], "preponderant");
    assert_eq!(meta["resolution"], 64);
    assert_eq!(meta["domain_order"], serde_json::json!(["d1", "d2", "d3"]));
    assert!(meta["axis_convention"]
        .as_str()
        .unwrap()
        .contains("row 0 is the top row"));
}

#[test]
fn tiles_json_only_dumps_grids() {
    let dir = tempfile::tempdir().unwrap();
    let config = three_domain().with_formats(vec![Format::Json]);
    let (manifest, _) = cmd_tiles(&config, dir.path()).unwrap();
    assert_eq!(count_ext(dir.path(), ".png"), 0);
    assert_eq!(count_ext(dir.path(), ".svg"), 0);
    assert_eq!(count_ext(dir.path(), ".grid.json"), 11);
    assert_eq!(manifest.formats, ["json"]);
    let grid: serde_json::Value = serde_json::from_slice(
        &fs::read(dir.path().join("flavor_most_difficult.grid.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(grid["kind"], "categorical");
    assert_eq!(grid["cells"].as_array().unwrap().len(), 16);
    // pixel nearest (1, 1): top row, last column → d2
    assert_eq!(grid["cells"][0][15], 1);
}

#[test]
fn tiles_single_domain_skips_bottleneck() {
    let dir = tempfile::tempdir().unwrap();
    let config = parse_config(
        r#"{"domains": [{"id": "x", "confusion": {"tn": 5, "fp": 1, "fn": 2, "tp": 4}}],
            "grid": {"resolution": 4}, "outputs": {"formats": ["csv"]}}"#,
    )
    .unwrap();
    let (manifest, _) = cmd_tiles(&config, dir.path()).unwrap();
    assert_eq!(manifest.tiles.len(), 6);
    assert_eq!(manifest.skipped.len(), 1);
    assert_eq!(manifest.skipped[0].name, "flavor_bottleneck");
    assert_eq!(count_ext(dir.path(), ".csv"), 6);
}

#[test]
fn tiles_rerun_is_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let (manifest, _) = cmd_tiles(&three_domain(), a.path()).unwrap();
    cmd_tiles(&three_domain(), b.path()).unwrap();
    for f in manifest.files().chain(["manifest.json"]) {
        assert_eq!(
            fs::read(a.path().join(f)).unwrap(),
            fs::read(b.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_domaintile"))
}

#[test]
fn binary_runs_all_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, THREE_DOMAINS).unwrap();
    let out = dir.path().join("out");

    let status = binary()
        .args(["summarize", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success());
    let stdout = String::from_utf8(status.stdout).unwrap();
    assert!(stdout.contains("\"sources\""));

    let status = binary()
        .args(["analyze", "--points", "accuracy,0.9:0.1", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success());
    let stdout = String::from_utf8(status.stdout).unwrap();
    assert!(
        stdout.contains("easiest=d1 most_difficult=d3 preponderant=TIE{d1,d2,d3} bottleneck=d3")
    );

    let status = binary()
        .args(["tiles", "--resolution", "8", "--formats", "svg", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(out.join("flavor_bottleneck.svg").is_file());
    assert!(!out.join("flavor_bottleneck.png").exists());
}

#[test]
fn binary_uses_env_out_dir_and_fails_on_bad_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(&config, THREE_DOMAINS).unwrap();
    let env_out = dir.path().join("from-env");
    let status = binary()
        .args(["summarize", "--config"])
        .arg(&config)
        .env(OUT_DIR_ENV, &env_out)
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(env_out.join("summary.json").is_file());

    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"domains": [{"id": "a", "lambda": -1, "confusion": {"tn":1,"fp":0,"fn":0,"tp":1}}]}"#,
    )
    .unwrap();
    let output = binary()
        .args(["analyze", "--config"])
        .arg(&bad)
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(!output.status.success());
    assert!(String::from_utf8_lossy(&output.stderr).contains("lambda"));

    let output = binary()
        .args(["tiles", "--resolution", "1", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(!output.status.success());
}
