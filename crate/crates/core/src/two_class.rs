//! Two-class crisp classification: the four-sample space `{tn, fp, fn, tp}`,
//! satisfaction on correct decisions, and the canonical importances indexed
//! by Tile coordinates `(a, b)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Coordinate, Error, Result};
use crate::performance::{
    Importance, Normalization, Performance, RandomVariable, SampleSpace, SCORE_DOMAIN_TOLERANCE,
};

pub const TN: usize = 0;
pub const FP: usize = 1;
pub const FN: usize = 2;
pub const TP: usize = 3;

pub const LABELS: [&str; 4] = ["tn", "fp", "fn", "tp"];

/// The space `{tn, fp, fn, tp}`, always in that order.
pub fn two_class_space() -> SampleSpace {
    static SPACE: OnceLock<SampleSpace> = OnceLock::new();
    SPACE
        .get_or_init(|| SampleSpace::new(LABELS).expect("labels are distinct"))
        .clone()
}

/// Satisfaction `S = 1_{tn, tp}`.
pub fn two_class_satisfaction() -> RandomVariable {
    RandomVariable::new(two_class_space(), vec![1.0, 0.0, 0.0, 1.0]).expect("finite values")
}

/// Confusion-matrix entries, as counts or probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfusionInput {
    pub tn: f64,
    pub fp: f64,
    #[serde(rename = "fn")]
    pub fn_: f64,
    pub tp: f64,
}

impl ConfusionInput {
    pub fn new(tn: f64, fp: f64, fn_: f64, tp: f64) -> Self {
        Self { tn, fp, fn_, tp }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.tn, self.fp, self.fn_, self.tp]
    }

    pub fn from_performance(p: &Performance) -> Result<Self> {
        if p.space() != &two_class_space() {
            return Err(Error::SpaceMismatch);
        }
        let m = p.masses();
        Ok(Self::new(m[TN], m[FP], m[FN], m[TP]))
    }
}

/// Normalizes a confusion matrix into a performance.
pub fn performance_from_confusion(c: &ConfusionInput) -> Result<Performance> {
    Performance::new(
        two_class_space(),
        c.as_array().to_vec(),
        Normalization::Renormalize,
    )
}

/// A point of the Tile, `(a, b) ∈ [0, 1]²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TilePoint {
    a: f64,
    b: f64,
}

impl TilePoint {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b)) {
            return Err(Error::OutOfUnitSquare { a, b });
        }
        Ok(Self { a, b })
    }

    /// Horizontal coordinate: relative importance of tp w.r.t. tn.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Vertical coordinate: relative importance of fn w.r.t. fp.
    pub fn b(&self) -> f64 {
        self.b
    }
}

/// Canonical importance at `p`: `I = (1−a, 1−b, b, a)` over `(tn, fp, fn, tp)`.
pub fn canonical_importance(p: TilePoint) -> Result<Importance> {
    Importance::from_values(two_class_space(), vec![1.0 - p.a, 1.0 - p.b, p.b, p.a])
}

/// Recovers `a = I(tp) / (I(tn) + I(tp))` and `b = I(fn) / (I(fp) + I(fn))`.
pub fn tile_point_from_importance(importance: &Importance) -> Result<TilePoint> {
    if importance.space() != &two_class_space() {
        return Err(Error::SpaceMismatch);
    }
    let i = importance.values();
    let a_den = i[TN] + i[TP];
    if a_den <= 0.0 {
        return Err(Error::UndefinedCoordinate(Coordinate::A));
    }
    let b_den = i[FP] + i[FN];
    if b_den <= 0.0 {
        return Err(Error::UndefinedCoordinate(Coordinate::B));
    }
    // Ratios of non-negative terms can exceed 1 by an ulp at most.
    TilePoint::new((i[TP] / a_den).min(1.0), (i[FN] / b_den).min(1.0))
}

/// Value of the canonical ranking score at `p` for a two-class performance:
///
/// `[P(tn)(1−a) + P(tp)a] / [P(tn)(1−a) + P(fp)(1−b) + P(fn)b + P(tp)a]`
///
/// The summation order matches the generic ranking score, so both agree to
/// the last bit.
pub fn canonical_score_value(perf: &Performance, p: TilePoint) -> Result<f64> {
    if perf.space() != &two_class_space() {
        return Err(Error::SpaceMismatch);
    }
    let m = perf.masses();
    let (a, b) = (p.a, p.b);
    let tn = m[TN] * (1.0 - a);
    let fp = m[FP] * (1.0 - b);
    let fn_ = m[FN] * b;
    let tp = m[TP] * a;
    let den = tn + fp + fn_ + tp;
    if den.abs() <= SCORE_DOMAIN_TOLERANCE {
        return Err(Error::OutsideScoreDomain { denominator: den });
    }
    let num = tn + 0.0 + 0.0 + tp;
    Ok(num / den)
}

/// Classical scores that are canonical ranking scores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedScore {
    Accuracy,
    Tnr,
    Tpr,
    Npv,
    Ppv,
    F1,
}

impl NamedScore {
    pub const ALL: [NamedScore; 6] = [
        NamedScore::Accuracy,
        NamedScore::Tnr,
        NamedScore::Tpr,
        NamedScore::Npv,
        NamedScore::Ppv,
        NamedScore::F1,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            NamedScore::Accuracy => "accuracy",
            NamedScore::Tnr => "TNR",
            NamedScore::Tpr => "TPR",
            NamedScore::Npv => "NPV",
            NamedScore::Ppv => "PPV",
            NamedScore::F1 => "F1",
        }
    }

    pub fn point(&self) -> TilePoint {
        let (a, b) = match self {
            NamedScore::Accuracy => (0.5, 0.5),
            NamedScore::Tnr => (0.0, 0.0),
            NamedScore::Tpr => (1.0, 1.0),
            NamedScore::Npv => (0.0, 1.0),
            NamedScore::Ppv => (1.0, 0.0),
            NamedScore::F1 => (1.0, 0.5),
        };
        TilePoint { a, b }
    }
}

impl fmt::Display for NamedScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedScore {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.to_ascii_lowercase();
        let found = match key.as_str() {
            "accuracy" | "acc" => NamedScore::Accuracy,
            "tnr" | "specificity" => NamedScore::Tnr,
            "tpr" | "recall" | "sensitivity" => NamedScore::Tpr,
            "npv" => NamedScore::Npv,
            "ppv" | "precision" => NamedScore::Ppv,
            "f1" | "f-one" => NamedScore::F1,
            _ => return Err(format!("unknown score name `{s}`")),
        };
        Ok(found)
    }
}

/// The six named scores with their Tile coordinates, in a fixed order.
pub fn named_score_points() -> Vec<(NamedScore, TilePoint)> {
    NamedScore::ALL.iter().map(|s| (*s, s.point())).collect()
}
