//! PNG and SVG encoders for [`TileGrid`]s, plus the JSON sidecar that records
//! how an image was produced.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tile::{TileCells, TileGrid, AXIS_CONVENTION, TIE, UNDEFINED};

pub type Rgb = [u8; 3];

/// Scalar colormaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Colormap {
    /// Single-hue ramp from near-white (0) to dark blue (1).
    Blues,
    /// Black (0) to white (1).
    Gray,
}

impl Colormap {
    pub fn name(&self) -> &'static str {
        match self {
            Colormap::Blues => "blues",
            Colormap::Gray => "gray",
        }
    }

    fn endpoints(&self) -> (Rgb, Rgb) {
        match self {
            Colormap::Blues => ([247, 251, 255], [8, 48, 107]),
            Colormap::Gray => ([0, 0, 0], [255, 255, 255]),
        }
    }

    /// Color of `t`, clamped to `[0, 1]`.
    pub fn color(&self, t: f64) -> Rgb {
        let t = t.clamp(0.0, 1.0);
        let (lo, hi) = self.endpoints();
        let mut out = [0u8; 3];
        for c in 0..3 {
            let v = lo[c] as f64 + (hi[c] as f64 - lo[c] as f64) * t;
            out[c] = v.round() as u8;
        }
        out
    }
}

/// Categorical palette; entries are assigned to domains in declaration order.
pub const DEFAULT_PALETTE: [Rgb; 10] = [
    [31, 119, 180],
    [255, 127, 14],
    [44, 160, 44],
    [214, 39, 40],
    [148, 103, 189],
    [140, 86, 75],
    [227, 119, 194],
    [188, 189, 34],
    [23, 190, 207],
    [127, 127, 127],
];

pub const DEFAULT_IMAGE_SIZE: u32 = 512;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderStyle {
    colormap: Colormap,
    #[serde(serialize_with = "hex_list")]
    palette: Vec<Rgb>,
    #[serde(serialize_with = "hex")]
    undefined_color: Rgb,
    #[serde(serialize_with = "hex")]
    tie_color: Rgb,
    image_size: u32,
}

impl Default for RenderStyle {
    fn default() -> Self {
        Self {
            colormap: Colormap::Blues,
            palette: DEFAULT_PALETTE.to_vec(),
            undefined_color: [255, 0, 255],
            tie_color: [0, 0, 0],
            image_size: DEFAULT_IMAGE_SIZE,
        }
    }
}

impl RenderStyle {
    pub fn new(
        colormap: Colormap,
        palette: Vec<Rgb>,
        undefined_color: Rgb,
        tie_color: Rgb,
        image_size: u32,
    ) -> Result<Self> {
        if image_size == 0 {
            return Err(Error::BadImageSize);
        }
        let mut seen = HashSet::new();
        for c in palette.iter().chain([&undefined_color, &tie_color]) {
            if !seen.insert(*c) {
                return Err(Error::DuplicateColor);
            }
        }
        Ok(Self {
            colormap,
            palette,
            undefined_color,
            tie_color,
            image_size,
        })
    }

    pub fn with_image_size(mut self, image_size: u32) -> Result<Self> {
        if image_size == 0 {
            return Err(Error::BadImageSize);
        }
        self.image_size = image_size;
        Ok(self)
    }

    pub fn colormap(&self) -> Colormap {
        self.colormap
    }

    pub fn palette(&self) -> &[Rgb] {
        &self.palette
    }

    pub fn undefined_color(&self) -> Rgb {
        self.undefined_color
    }

    pub fn tie_color(&self) -> Rgb {
        self.tie_color
    }

    pub fn image_size(&self) -> u32 {
        self.image_size
    }

    fn check(&self, grid: &TileGrid) -> Result<()> {
        if grid.categories().is_some() && self.palette.len() < grid.domain_count() {
            return Err(Error::PaletteTooSmall {
                required: grid.domain_count(),
                available: self.palette.len(),
            });
        }
        Ok(())
    }

    fn category_color(&self, id: i32) -> Rgb {
        match id {
            TIE => self.tie_color,
            UNDEFINED => self.undefined_color,
            i => self.palette[i as usize],
        }
    }

    /// Colors of every cell, in grid order.
    pub fn cell_colors(&self, grid: &TileGrid) -> Result<Vec<Rgb>> {
        self.check(grid)?;
        Ok(match grid.cells() {
            TileCells::Scalar(values) => values
                .iter()
                .map(|v| v.map_or(self.undefined_color, |x| self.colormap.color(x)))
                .collect(),
            TileCells::Categorical(ids) => ids.iter().map(|&c| self.category_color(c)).collect(),
        })
    }
}

fn hex_string(c: &Rgb) -> String {
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

fn hex<S: serde::Serializer>(c: &Rgb, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&hex_string(c))
}

fn hex_list<S: serde::Serializer>(cs: &[Rgb], ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_seq(cs.iter().map(hex_string))
}

/// 8-bit RGB PNG, `image_size` pixels square, nearest-cell sampling.
pub fn encode_png(grid: &TileGrid, style: &RenderStyle) -> Result<Vec<u8>> {
    let colors = style.cell_colors(grid)?;
    let size = style.image_size as usize;
    let n = grid.resolution();
    let mut data = Vec::with_capacity(size * size * 3);
    for y in 0..size {
        let row = y * n / size;
        for x in 0..size {
            let col = x * n / size;
            data.extend_from_slice(&colors[row * n + col]);
        }
    }

    let mut out = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut out, style.image_size, style.image_size);
        encoder.set_color(png::ColorType::Rgb);
        encoder.set_depth(png::BitDepth::Eight);
        encoder
            .add_text_chunk("Comment".to_owned(), AXIS_CONVENTION.to_owned())
            .map_err(|e| Error::Png(e.to_string()))?;
        let mut writer = encoder
            .write_header()
            .map_err(|e| Error::Png(e.to_string()))?;
        writer
            .write_image_data(&data)
            .map_err(|e| Error::Png(e.to_string()))?;
        writer.finish().map_err(|e| Error::Png(e.to_string()))?;
    }
    Ok(out)
}

const SVG_MARGIN: f64 = 24.0;

/// SVG 1.1 document with one `rect` per grid cell and axis labels.
pub fn encode_svg(grid: &TileGrid, style: &RenderStyle) -> Result<String> {
    let colors = style.cell_colors(grid)?;
    let n = grid.resolution();
    let side = style.image_size as f64;
    let cell = side / n as f64;
    let total = side + 2.0 * SVG_MARGIN;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    );
    let _ = writeln!(s, "<metadata>{AXIS_CONVENTION}</metadata>");
    let _ = writeln!(s, r#"<g id="cells" shape-rendering="crispEdges">"#);
    for row in 0..n {
        for col in 0..n {
            let x = SVG_MARGIN + col as f64 * cell;
            let y = SVG_MARGIN + row as f64 * cell;
            let _ = writeln!(
                s,
                r#"<rect x="{:.4}" y="{:.4}" width="{:.4}" height="{:.4}" fill="{}"/>"#,
                x,
                y,
                cell,
                cell,
                hex_string(&colors[row * n + col])
            );
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(
        s,
        r#"<rect x="{m}" y="{m}" width="{side}" height="{side}" fill="none" stroke="black" stroke-width="1"/>"#,
        m = SVG_MARGIN
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle">a</text>"#,
        SVG_MARGIN + side / 2.0,
        total - 6.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="14" text-anchor="middle">b</text>"#,
        SVG_MARGIN / 2.0,
        SVG_MARGIN + side / 2.0
    );
    s.push_str("</svg>\n");
    Ok(s)
}

/// Description of a rendered tile, written next to each image.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sidecar {
    pub name: String,
    /// `value`, `weight`, or one of the four selector flavors.
    pub flavor: String,
    /// Domain the tile is about, for value and weight tiles.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    pub resolution: usize,
    pub axis_convention: &'static str,
    pub domain_order: Vec<String>,
    pub style: RenderStyle,
    pub tie_id: i32,
    pub undefined_id: i32,
}

impl Sidecar {
    pub fn new(
        name: impl Into<String>,
        flavor: impl Into<String>,
        domain: Option<String>,
        grid: &TileGrid,
        domain_order: Vec<String>,
        style: &RenderStyle,
    ) -> Self {
        Self {
            name: name.into(),
            flavor: flavor.into(),
            domain,
            resolution: grid.resolution(),
            axis_convention: AXIS_CONVENTION,
            domain_order,
            style: style.clone(),
            tie_id: TIE,
            undefined_id: UNDEFINED,
        }
    }
}
