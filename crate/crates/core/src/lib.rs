//! Multi-domain performance analysis driven by user preferences.
//!
//! Domain-specific performances are averaged by [`summarization::summarize`],
//! a mixture of probability measures. For expected value scores and expected
//! value ratio scores (which include every ranking score), the score of the
//! mixture is a weighted arithmetic mean of the domain scores; the weights are
//! given in closed form by the `weights_for_*` functions.
//!
//! [`analysis`] picks the easiest, most difficult, preponderant and
//! bottleneck domains for a given importance, and [`tile`] sweeps those
//! selectors (and score values and weights) over the Tile of two-class
//! crisp classification. [`render`] turns the resulting grids into images.

pub mod analysis;
pub mod error;
pub mod performance;
pub mod render;
pub mod summarization;
pub mod tile;
pub mod two_class;

pub use analysis::{
    bottleneck_domain, easiest_domain, most_difficult_domain, preponderant_domain, Selection,
    TIE_TOLERANCE,
};
pub use error::{Coordinate, Error, Result};
pub use performance::{
    expected_value, ExpectedValueRatioScore, ExpectedValueScore, Importance, Normalization,
    Performance, RandomVariable, RankingScore, SampleSpace, Score,
};
pub use render::{encode_png, encode_svg, Colormap, RenderStyle, Sidecar};
pub use summarization::{
    summarize, weights_for_ev_score, weights_for_evr_score, weights_for_evr_score_via_summary,
    weights_for_ranking_score, Domain, DomainSet, WeightVector,
};
pub use tile::{flavor_tile, grid_points, value_tile, weight_tile, weight_tiles, Flavor, TileGrid};
pub use two_class::{
    canonical_importance, canonical_score_value, named_score_points, performance_from_confusion,
    tile_point_from_importance, two_class_satisfaction, two_class_space, ConfusionInput,
    NamedScore, TilePoint,
};
