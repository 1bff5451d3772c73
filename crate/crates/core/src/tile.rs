//! Tiles: functions of the importance sampled on an `N×N` grid over the
//! `(a, b)` unit square.
//!
//! Cells are sampled at pixel centers, so no sample lies on the boundary of
//! the square. Cells are stored row-major in image order: `a` grows to the
//! right, `b` grows upward, and row 0 is the top row (`b` close to 1).

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::analysis::{
    bottleneck_domain, easiest_domain, most_difficult_domain, preponderant_domain, Selection,
};
use crate::error::{Error, Result};
use crate::performance::{Importance, Performance};
use crate::summarization::{weights_for_ranking_score, DomainSet};
use crate::two_class::{
    canonical_importance, canonical_score_value, two_class_satisfaction, TilePoint,
};

/// Category id of a pixel where several domains are tied.
pub const TIE: i32 = -2;
/// Category id of a pixel where the selector is undefined.
pub const UNDEFINED: i32 = -1;

pub const AXIS_CONVENTION: &str =
    "a increases rightward, b increases upward, row 0 is the top row (b near 1); cells sampled at pixel centers";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Easiest,
    MostDifficult,
    Preponderant,
    Bottleneck,
}

impl Flavor {
    pub const ALL: [Flavor; 4] = [
        Flavor::Easiest,
        Flavor::MostDifficult,
        Flavor::Preponderant,
        Flavor::Bottleneck,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Flavor::Easiest => "easiest",
            Flavor::MostDifficult => "most_difficult",
            Flavor::Preponderant => "preponderant",
            Flavor::Bottleneck => "bottleneck",
        }
    }

    /// Runs the matching selector at one importance.
    pub fn select(&self, domains: &DomainSet, importance: &Importance) -> Result<Selection> {
        let s = two_class_satisfaction();
        match self {
            Flavor::Easiest => easiest_domain(domains, importance, &s),
            Flavor::MostDifficult => most_difficult_domain(domains, importance, &s),
            Flavor::Preponderant => preponderant_domain(domains, importance),
            Flavor::Bottleneck => bottleneck_domain(domains, importance, &s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "cells", rename_all = "snake_case")]
pub enum TileCells {
    /// Values in `[0, 1]`, `None` where undefined.
    Scalar(#[serde(serialize_with = "rows_of")] Vec<Option<f64>>),
    /// Domain index, [`TIE`] or [`UNDEFINED`].
    Categorical(#[serde(serialize_with = "rows_of")] Vec<i32>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TileGrid {
    resolution: usize,
    /// Number of domains a categorical grid may refer to; 0 for scalar grids.
    domain_count: usize,
    #[serde(flatten)]
    cells: TileCells,
}

impl TileGrid {
    pub fn scalar(resolution: usize, values: Vec<Option<f64>>) -> Result<Self> {
        check_resolution(resolution)?;
        assert_eq!(values.len(), resolution * resolution, "cell count");
        Ok(Self {
            resolution,
            domain_count: 0,
            cells: TileCells::Scalar(values),
        })
    }

    pub fn categorical(resolution: usize, domain_count: usize, ids: Vec<i32>) -> Result<Self> {
        check_resolution(resolution)?;
        assert_eq!(ids.len(), resolution * resolution, "cell count");
        debug_assert!(ids
            .iter()
            .all(|&c| c == TIE || c == UNDEFINED || (0..domain_count as i32).contains(&c)));
        Ok(Self {
            resolution,
            domain_count,
            cells: TileCells::Categorical(ids),
        })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn domain_count(&self) -> usize {
        self.domain_count
    }

    pub fn cells(&self) -> &TileCells {
        &self.cells
    }

    pub fn scalar_values(&self) -> Option<&[Option<f64>]> {
        match &self.cells {
            TileCells::Scalar(v) => Some(v),
            TileCells::Categorical(_) => None,
        }
    }

    pub fn categories(&self) -> Option<&[i32]> {
        match &self.cells {
            TileCells::Categorical(v) => Some(v),
            TileCells::Scalar(_) => None,
        }
    }

    /// Flat index of the cell at `(row, col)`, row 0 on top.
    pub fn index(&self, row: usize, col: usize) -> usize {
        row * self.resolution + col
    }

    /// The point sampled by the cell at `(row, col)`.
    pub fn point_at(&self, row: usize, col: usize) -> TilePoint {
        cell_point(self.resolution, row, col)
    }
}

fn rows_of<T: Serialize, S: Serializer>(cells: &[T], ser: S) -> Result<S::Ok, S::Error> {
    let n = (cells.len() as f64).sqrt().round() as usize;
    ser.collect_seq(cells.chunks(n.max(1)))
}

fn check_resolution(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::BadResolution(n))
    } else {
        Ok(())
    }
}

fn cell_point(n: usize, row: usize, col: usize) -> TilePoint {
    let nf = n as f64;
    let a = (col as f64 + 0.5) / nf;
    let b = ((n - 1 - row) as f64 + 0.5) / nf;
    TilePoint::new(a, b).expect("pixel centers lie inside the unit square")
}

/// Pixel-center sample points in image order (row 0 on top).
pub fn grid_points(n: usize) -> Result<Vec<TilePoint>> {
    check_resolution(n)?;
    Ok((0..n * n).map(|k| cell_point(n, k / n, k % n)).collect())
}

fn map_points<T, F>(n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(TilePoint) -> T + Sync + Send,
{
    let points = grid_points(n)?;
    Ok(points.into_par_iter().map(f).collect())
}

/// Value Tile: the canonical ranking score of `perf` at every cell.
pub fn value_tile(perf: &Performance, n: usize) -> Result<TileGrid> {
    let values = map_points(n, |p| canonical_score_value(perf, p).ok())?;
    TileGrid::scalar(n, values)
}

/// Summarization Weight Tile of the domain `id`.
pub fn weight_tile(domains: &DomainSet, id: &str, n: usize) -> Result<TileGrid> {
    let index = domains
        .index_of(id)
        .ok_or_else(|| Error::UnknownDomain(id.to_owned()))?;
    let values = map_points(n, |p| {
        let i = canonical_importance(p).ok()?;
        weights_for_ranking_score(domains, &i)
            .ok()
            .map(|w| w[index])
    })?;
    TileGrid::scalar(n, values)
}

/// Summarization Weight Tiles of all domains, in declaration order.
pub fn weight_tiles(domains: &DomainSet, n: usize) -> Result<Vec<TileGrid>> {
    let per_cell = map_points(n, |p| {
        let i = canonical_importance(p).ok()?;
        weights_for_ranking_score(domains, &i).ok()
    })?;
    (0..domains.len())
        .map(|d| {
            let values = per_cell.iter().map(|w| w.as_ref().map(|w| w[d])).collect();
            TileGrid::scalar(n, values)
        })
        .collect()
}

/// Category id for a selector outcome at one cell.
pub fn category_of(outcome: &Result<Selection>) -> i32 {
    match outcome {
        Ok(s) if s.is_tie() => TIE,
        Ok(s) => s.winner_index() as i32,
        Err(_) => UNDEFINED,
    }
}

/// Categorical Tile of one of the four domain selectors.
pub fn flavor_tile(domains: &DomainSet, flavor: Flavor, n: usize) -> Result<TileGrid> {
    if flavor == Flavor::Bottleneck && domains.len() < 2 {
        return Err(Error::TooFewDomains(domains.len()));
    }
    let ids = map_points(n, |p| match canonical_importance(p) {
        Ok(i) => category_of(&flavor.select(domains, &i)),
        Err(_) => UNDEFINED,
    })?;
    TileGrid::categorical(n, domains.len(), ids)
}
