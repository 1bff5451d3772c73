//! Performances as probability measures on a finite sample space, random
//! variables over that space, and the three score families built on
//! expectations: expected value, expected value ratio, and ranking scores.
//!
//! Every type here is immutable once constructed. A [`SampleSpace`] is cheap
//! to clone (its labels are shared), so performances and variables each carry
//! their own handle and mismatches are caught at evaluation time.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Masses of a constructed [`Performance`] sum to one within this tolerance.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// A denominator expectation with magnitude at or below this value puts the
/// performance outside the score domain.
pub const SCORE_DOMAIN_TOLERANCE: f64 = 1e-12;

/// An ordered set of distinct sample labels. The order fixes indexing for
/// every performance and random variable defined on the space.
#[derive(Clone)]
pub struct SampleSpace {
    labels: Arc<[String]>,
}

impl SampleSpace {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            labels: labels.into(),
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    fn ensure_same(&self, other: &SampleSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }
}

impl PartialEq for SampleSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for SampleSpace {}

impl fmt::Debug for SampleSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

/// How [`Performance::new`] treats masses that do not sum to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Reject unless the sum is within [`NORMALIZATION_TOLERANCE`] of one.
    #[default]
    Strict,
    /// Divide by the sum, which must be positive.
    Renormalize,
}

/// A probability measure on a finite sample space, i.e. one mass per sample.
/// In two-class classification this is a normalized confusion matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Performance {
    space: SampleSpace,
    masses: Vec<f64>,
}

impl Performance {
    pub fn new(space: SampleSpace, masses: Vec<f64>, mode: Normalization) -> Result<Self> {
        check_len(&space, masses.len())?;
        for (index, &m) in masses.iter().enumerate() {
            if !m.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if m < 0.0 {
                return Err(Error::NegativeMass { index, value: m });
            }
        }
        let sum: f64 = masses.iter().sum();
        let masses = match mode {
            Normalization::Strict => {
                if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
                    return Err(Error::NotNormalized { sum });
                }
                masses
            }
            Normalization::Renormalize => {
                if sum <= 0.0 {
                    return Err(Error::ZeroTotal);
                }
                masses.into_iter().map(|m| m / sum).collect()
            }
        };
        Ok(Self { space, masses })
    }

    /// Point mass on the sample at `index`.
    pub fn dirac(space: SampleSpace, index: usize) -> Result<Self> {
        if index >= space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                actual: index + 1,
            });
        }
        let mut masses = vec![0.0; space.len()];
        masses[index] = 1.0;
        Ok(Self { space, masses })
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn mass(&self, label: &str) -> Option<f64> {
        self.space.index_of(label).map(|i| self.masses[i])
    }

    /// `E_P[V] = Σ_ω P({ω}) V(ω)`.
    pub fn expected_value(&self, v: &RandomVariable) -> Result<f64> {
        self.space.ensure_same(&v.space)?;
        Ok(dot(&self.masses, &v.values))
    }
}

/// Convenience form of [`Performance::expected_value`].
pub fn expected_value(p: &Performance, v: &RandomVariable) -> Result<f64> {
    p.expected_value(v)
}

/// A finite real-valued function on a sample space.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomVariable {
    space: SampleSpace,
    values: Vec<f64>,
}

impl RandomVariable {
    pub fn new(space: SampleSpace, values: Vec<f64>) -> Result<Self> {
        check_len(&space, values.len())?;
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { space, values })
    }

    pub fn constant(space: SampleSpace, c: f64) -> Result<Self> {
        let n = space.len();
        Self::new(space, vec![c; n])
    }

    /// Indicator of the event made of the given labels.
    pub fn indicator<'a, I>(space: SampleSpace, event: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut values = vec![0.0; space.len()];
        for label in event {
            let i = space
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
            values[i] = 1.0;
        }
        Ok(Self { space, values })
    }

    pub fn space(&self) -> &SampleSpace {
        &self.space
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, label: &str) -> Option<f64> {
        self.space.index_of(label).map(|i| self.values[i])
    }

    /// Pointwise product `(V·W)(ω) = V(ω) W(ω)`.
    pub fn product(&self, other: &RandomVariable) -> Result<RandomVariable> {
        self.space.ensure_same(&other.space)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| x * y)
            .collect();
        RandomVariable::new(self.space.clone(), values)
    }

    pub fn scaled(&self, k: f64) -> Result<RandomVariable> {
        RandomVariable::new(
            self.space.clone(),
            self.values.iter().map(|v| v * k).collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }
}

/// A non-negative random variable, not identically zero, encoding user
/// preferences over the samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Importance(RandomVariable);

impl Importance {
    pub fn new(inner: RandomVariable) -> Result<Self> {
        if let Some((index, &value)) = inner.values.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::NegativeImportance { index, value });
        }
        if inner.is_zero() {
            return Err(Error::DegenerateImportance);
        }
        Ok(Self(inner))
    }

    pub fn from_values(space: SampleSpace, values: Vec<f64>) -> Result<Self> {
        Self::new(RandomVariable::new(space, values)?)
    }

    /// `k·I` for `k > 0`.
    pub fn scaled(&self, k: f64) -> Result<Importance> {
        if !(k.is_finite() && k > 0.0) {
            return Err(Error::InvalidScale(k));
        }
        Importance::new(self.0.scaled(k)?)
    }

    pub fn as_variable(&self) -> &RandomVariable {
        &self.0
    }

    pub fn space(&self) -> &SampleSpace {
        &self.0.space
    }

    pub fn values(&self) -> &[f64] {
        &self.0.values
    }
}

impl AsRef<RandomVariable> for Importance {
    fn as_ref(&self) -> &RandomVariable {
        &self.0
    }
}

/// A function from performances to reals. Evaluation is a pure function of
/// the score and the performance.
pub trait Score {
    fn evaluate(&self, p: &Performance) -> Result<f64>;
}

/// `X(P) = E_P[V]`. Defined on every performance over the space.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedValueScore {
    variable: RandomVariable,
}

impl ExpectedValueScore {
    pub fn new(variable: RandomVariable) -> Self {
        Self { variable }
    }

    pub fn variable(&self) -> &RandomVariable {
        &self.variable
    }
}

impl Score for ExpectedValueScore {
    fn evaluate(&self, p: &Performance) -> Result<f64> {
        p.expected_value(&self.variable)
    }
}

/// `X(P) = E_P[V1] / E_P[V2]`, defined where `|E_P[V2]|` exceeds
/// [`SCORE_DOMAIN_TOLERANCE`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectedValueRatioScore {
    numerator: RandomVariable,
    denominator: RandomVariable,
}

impl ExpectedValueRatioScore {
    pub fn new(numerator: RandomVariable, denominator: RandomVariable) -> Result<Self> {
        numerator.space.ensure_same(&denominator.space)?;
        if denominator.is_zero() {
            return Err(Error::ZeroVariable);
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn numerator(&self) -> &RandomVariable {
        &self.numerator
    }

    pub fn denominator(&self) -> &RandomVariable {
        &self.denominator
    }

    pub fn in_domain(&self, p: &Performance) -> Result<bool> {
        Ok(p.expected_value(&self.denominator)?.abs() > SCORE_DOMAIN_TOLERANCE)
    }
}

impl Score for ExpectedValueRatioScore {
    fn evaluate(&self, p: &Performance) -> Result<f64> {
        let den = p.expected_value(&self.denominator)?;
        if den.abs() <= SCORE_DOMAIN_TOLERANCE {
            return Err(Error::OutsideScoreDomain { denominator: den });
        }
        Ok(p.expected_value(&self.numerator)? / den)
    }
}

/// `R_I(P) = E_P[I·S] / E_P[I]`, the expected value ratio score with
/// numerator `I·S` and denominator `I`.
///
/// Value bounds in `[0, 1]` hold only when the satisfaction itself takes
/// values in `[0, 1]`; any finite satisfaction is accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingScore {
    importance: Importance,
    satisfaction: RandomVariable,
    ratio: ExpectedValueRatioScore,
}

impl RankingScore {
    pub fn new(importance: Importance, satisfaction: RandomVariable) -> Result<Self> {
        let weighted = importance.0.product(&satisfaction)?;
        let ratio = ExpectedValueRatioScore::new(weighted, importance.0.clone())?;
        Ok(Self {
            importance,
            satisfaction,
            ratio,
        })
    }

    pub fn importance(&self) -> &Importance {
        &self.importance
    }

    pub fn satisfaction(&self) -> &RandomVariable {
        &self.satisfaction
    }

    /// The equivalent expected value ratio score `X^EVR_{I·S, I}`.
    pub fn as_ratio(&self) -> &ExpectedValueRatioScore {
        &self.ratio
    }

    pub fn in_domain(&self, p: &Performance) -> Result<bool> {
        self.ratio.in_domain(p)
    }
}

impl Score for RankingScore {
    fn evaluate(&self, p: &Performance) -> Result<f64> {
        self.ratio.evaluate(p)
    }
}

pub(crate) fn dot(xs: &[f64], ys: &[f64]) -> f64 {
    xs.iter().zip(ys).map(|(x, y)| x * y).sum()
}

fn check_len(space: &SampleSpace, actual: usize) -> Result<()> {
    if space.len() != actual {
        return Err(Error::LengthMismatch {
            expected: space.len(),
            actual,
        });
    }
    Ok(())
}
