//! Averaging of domain-specific performances by mixture, and the
//! summarization weights that turn a score of the mixture into a weighted
//! arithmetic mean of the domain-specific scores.

use std::collections::HashSet;
use std::ops::Index;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::performance::{
    Importance, Performance, RandomVariable, SampleSpace, SCORE_DOMAIN_TOLERANCE,
};

/// One evaluation domain: an id, its a-priori weight `λ`, and the
/// performance observed there.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    id: String,
    weight: f64,
    performance: Performance,
}

impl Domain {
    pub fn new(id: impl Into<String>, weight: f64, performance: Performance) -> Self {
        Self {
            id: id.into(),
            weight,
            performance,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn performance(&self) -> &Performance {
        &self.performance
    }
}

/// An ordered, non-empty collection of domains sharing one sample space.
///
/// Domains with zero weight are kept so that indices stay stable; they
/// simply receive a zero summarization weight.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSet {
    domains: Vec<Domain>,
    total_weight: f64,
}

impl DomainSet {
    pub fn new(domains: Vec<Domain>) -> Result<Self> {
        let first = domains.first().ok_or(Error::EmptyDomainSet)?;
        let space = first.performance.space().clone();
        let mut ids = HashSet::with_capacity(domains.len());
        for d in &domains {
            if !ids.insert(d.id.as_str()) {
                return Err(Error::DuplicateDomain(d.id.clone()));
            }
            if !(d.weight.is_finite() && d.weight >= 0.0) {
                return Err(Error::InvalidDomainWeight {
                    id: d.id.clone(),
                    weight: d.weight,
                });
            }
            if d.performance.space() != &space {
                return Err(Error::SpaceMismatch);
            }
        }
        let total_weight: f64 = domains.iter().map(|d| d.weight).sum();
        if total_weight <= 0.0 {
            return Err(Error::ZeroTotalWeight);
        }
        Ok(Self {
            domains,
            total_weight,
        })
    }

    /// Builds a set from `(id, λ, performance)` triples.
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64, Performance)>,
        S: Into<String>,
    {
        Self::new(
            entries
                .into_iter()
                .map(|(id, w, p)| Domain::new(id, w, p))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Domain> {
        self.domains.iter()
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.domains.iter().map(|d| d.id.as_str())
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.domains.iter().position(|d| d.id == id)
    }

    pub fn space(&self) -> &SampleSpace {
        self.domains[0].performance.space()
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// The set with the domain at `index` removed. Fails with
    /// [`Error::ZeroTotalWeight`] when only zero-weight domains remain, or
    /// [`Error::EmptyDomainSet`] when nothing remains.
    pub fn without(&self, index: usize) -> Result<DomainSet> {
        let rest = self
            .domains
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, d)| d.clone())
            .collect();
        DomainSet::new(rest)
    }
}

impl Index<usize> for DomainSet {
    type Output = Domain;

    fn index(&self, index: usize) -> &Domain {
        &self.domains[index]
    }
}

impl<'a> IntoIterator for &'a DomainSet {
    type Item = &'a Domain;
    type IntoIter = std::slice::Iter<'a, Domain>;

    fn into_iter(self) -> Self::IntoIter {
        self.domains.iter()
    }
}

/// Summarization weights `ω_d`, aligned with the domain order of the set they
/// were computed from. Non-negative and summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<f64> {
        self.0.get(index).copied()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl Index<usize> for WeightVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

/// The summarized performance `P̄ = Σ_d λ_d P_d / Σ_d λ_d`.
pub fn summarize(domains: &DomainSet) -> Performance {
    let weights = weights_for_ev_score(domains);
    let n = domains.space().len();
    let mut masses = vec![0.0; n];
    for (d, &w) in domains.iter().zip(weights.as_slice()) {
        if w == 0.0 {
            continue;
        }
        for (acc, &m) in masses.iter_mut().zip(d.performance.masses()) {
            *acc += w * m;
        }
    }
    Performance::new(
        domains.space().clone(),
        masses,
        crate::performance::Normalization::Strict,
    )
    .expect("a convex combination of performances is a performance")
}

/// Weights for expected value scores: `ω_d = λ_d / Σ λ`. They do not depend
/// on the performances.
pub fn weights_for_ev_score(domains: &DomainSet) -> WeightVector {
    let total = domains.total_weight();
    WeightVector(domains.iter().map(|d| d.weight / total).collect())
}

/// Weights for the expected value ratio score with denominator `v2`:
/// `ω_d = λ_d E_{P_d}[V2] / Σ λ E[V2]`.
///
/// Fails with [`Error::OutsideScoreDomain`] when the denominator is within
/// tolerance of zero, and with [`Error::MixedSign`] when some `λ_d E_{P_d}[V2]`
/// has the opposite sign to the total.
pub fn weights_for_evr_score(domains: &DomainSet, v2: &RandomVariable) -> Result<WeightVector> {
    let terms = weighted_expectations(domains, v2)?;
    let total: f64 = terms.iter().sum();
    if total.abs() <= SCORE_DOMAIN_TOLERANCE {
        return Err(Error::OutsideScoreDomain { denominator: total });
    }
    if terms.iter().any(|t| t * total < 0.0) {
        return Err(Error::MixedSign);
    }
    Ok(WeightVector(terms.iter().map(|t| t / total).collect()))
}

/// Second closed form of the expected value ratio weights:
/// `ω_d = (λ_d / Σ λ) · E_{P_d}[V2] / E_{P̄}[V2]`, going through the
/// summarized performance. Same errors as [`weights_for_evr_score`].
pub fn weights_for_evr_score_via_summary(
    domains: &DomainSet,
    v2: &RandomVariable,
) -> Result<WeightVector> {
    let summary_expectation = summarize(domains).expected_value(v2)?;
    if summary_expectation.abs() <= SCORE_DOMAIN_TOLERANCE {
        return Err(Error::OutsideScoreDomain {
            denominator: summary_expectation,
        });
    }
    let prior = weights_for_ev_score(domains);
    let mut out = Vec::with_capacity(domains.len());
    for (d, &w) in domains.iter().zip(prior.as_slice()) {
        let e = d.performance.expected_value(v2)?;
        if w * e * summary_expectation < 0.0 {
            return Err(Error::MixedSign);
        }
        out.push(w * (e / summary_expectation));
    }
    Ok(WeightVector(out))
}

/// Weights for every ranking score with importance `I`:
/// `ω_d = λ_d E_{P_d}[I] / Σ λ E[I]`.
pub fn weights_for_ranking_score(
    domains: &DomainSet,
    importance: &Importance,
) -> Result<WeightVector> {
    // I ≥ 0, so every term is ≥ 0 and the mixed-sign case cannot occur.
    weights_for_evr_score(domains, importance.as_variable())
}

/// `λ_d E_{P_d}[V]` per domain.
pub(crate) fn weighted_expectations(domains: &DomainSet, v: &RandomVariable) -> Result<Vec<f64>> {
    domains
        .iter()
        .map(|d| Ok(d.weight * d.performance.expected_value(v)?))
        .collect()
}
