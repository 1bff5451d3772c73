use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which Tile coordinate could not be recovered from an importance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    /// `a`, undefined when `I(tn) + I(tp) = 0`.
    A,
    /// `b`, undefined when `I(fp) + I(fn) = 0`.
    B,
}

impl std::fmt::Display for Coordinate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Coordinate::A => f.write_str("a"),
            Coordinate::B => f.write_str("b"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sample space must contain at least one label")]
    EmptySpace,
    #[error("duplicate sample label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown sample label `{0}`")]
    UnknownLabel(String),
    #[error("expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("operands are defined on different sample spaces")]
    SpaceMismatch,
    #[error("value at index {index} is not finite")]
    NonFinite { index: usize },

    #[error("negative mass {value} at index {index}")]
    NegativeMass { index: usize, value: f64 },
    #[error("masses sum to {sum}, not 1")]
    NotNormalized { sum: f64 },
    #[error("masses sum to zero")]
    ZeroTotal,

    #[error("importance is negative ({value}) at index {index}")]
    NegativeImportance { index: usize, value: f64 },
    #[error("importance is zero everywhere")]
    DegenerateImportance,
    #[error("denominator variable is zero everywhere")]
    ZeroVariable,
    #[error("scale factor must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("performance lies outside the score domain (denominator expectation {denominator:e})")]
    OutsideScoreDomain { denominator: f64 },

    #[error("domain set is empty")]
    EmptyDomainSet,
    #[error("duplicate domain id `{0}`")]
    DuplicateDomain(String),
    #[error("domain `{id}` has invalid weight {weight}")]
    InvalidDomainWeight { id: String, weight: f64 },
    #[error("domain weights sum to zero")]
    ZeroTotalWeight,
    #[error("domain expectations have mixed signs, summarization weights would be negative")]
    MixedSign,
    #[error("unknown domain `{0}`")]
    UnknownDomain(String),

    #[error("ranking score undefined for domain(s) {}", .0.join(", "))]
    UndefinedScore(Vec<String>),
    #[error("bottleneck analysis needs at least 2 domains, got {0}")]
    TooFewDomains(usize),
    #[error("ablation undefined when removing domain(s) {}", .0.join(", "))]
    UndefinedAblation(Vec<String>),

    #[error("tile coordinate {0} is undefined for this importance")]
    UndefinedCoordinate(Coordinate),
    #[error("tile point ({a}, {b}) lies outside the unit square")]
    OutOfUnitSquare { a: f64, b: f64 },

    #[error("grid resolution must be at least 2, got {0}")]
    BadResolution(usize),
    #[error("palette has {available} colors but {required} domains need one")]
    PaletteTooSmall { required: usize, available: usize },
    #[error("render style colors must be distinct")]
    DuplicateColor,
    #[error("image size must be positive")]
    BadImageSize,
    #[error("png encoding failed: {0}")]
    Png(String),
}
