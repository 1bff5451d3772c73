//! Domain selectors driven by user preferences: easiest, most difficult,
//! preponderant and bottleneck domains.
//!
//! Every selector returns a [`Selection`] that keeps the full tie set.
//! Criterion values within [`TIE_TOLERANCE`] of the optimum are tied, and the
//! winner is the first tied domain in declaration order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::performance::SCORE_DOMAIN_TOLERANCE;
use crate::performance::{Importance, RandomVariable, RankingScore, Score};
use crate::summarization::{summarize, weighted_expectations, DomainSet};

pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Selection {
    tie_indices: Vec<usize>,
    tie_ids: Vec<String>,
    /// Criterion per domain, in declaration order. `None` where undefined.
    criterion_values: Vec<Option<f64>>,
}

impl Selection {
    pub fn winner(&self) -> &str {
        &self.tie_ids[0]
    }

    pub fn winner_index(&self) -> usize {
        self.tie_indices[0]
    }

    pub fn tie_set(&self) -> &[String] {
        &self.tie_ids
    }

    pub fn tie_indices(&self) -> &[usize] {
        &self.tie_indices
    }

    pub fn is_tie(&self) -> bool {
        self.tie_indices.len() > 1
    }

    pub fn criterion_values(&self) -> &[Option<f64>] {
        &self.criterion_values
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Max,
    Min,
}

fn select(domains: &DomainSet, values: Vec<f64>, direction: Direction) -> Selection {
    let optimum = match direction {
        Direction::Max => values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        Direction::Min => values.iter().copied().fold(f64::INFINITY, f64::min),
    };
    let tie_indices: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| (**v - optimum).abs() <= TIE_TOLERANCE)
        .map(|(i, _)| i)
        .collect();
    let tie_ids = tie_indices
        .iter()
        .map(|&i| domains[i].id().to_owned())
        .collect();
    Selection {
        tie_indices,
        tie_ids,
        criterion_values: values.into_iter().map(Some).collect(),
    }
}

/// `R_I(P_d)` for every domain, failing with the list of domains outside the
/// score domain.
pub fn domain_scores(
    domains: &DomainSet,
    importance: &Importance,
    satisfaction: &RandomVariable,
) -> Result<Vec<f64>> {
    let score = RankingScore::new(importance.clone(), satisfaction.clone())?;
    let mut values = Vec::with_capacity(domains.len());
    let mut undefined = Vec::new();
    for d in domains {
        match score.evaluate(d.performance()) {
            Ok(v) => values.push(v),
            Err(Error::OutsideScoreDomain { .. }) => undefined.push(d.id().to_owned()),
            Err(e) => return Err(e),
        }
    }
    if undefined.is_empty() {
        Ok(values)
    } else {
        Err(Error::UndefinedScore(undefined))
    }
}

/// `argmax_d R_I(P_d)`.
pub fn easiest_domain(
    domains: &DomainSet,
    importance: &Importance,
    satisfaction: &RandomVariable,
) -> Result<Selection> {
    let values = domain_scores(domains, importance, satisfaction)?;
    Ok(select(domains, values, Direction::Max))
}

/// `argmin_d R_I(P_d)`.
pub fn most_difficult_domain(
    domains: &DomainSet,
    importance: &Importance,
    satisfaction: &RandomVariable,
) -> Result<Selection> {
    let values = domain_scores(domains, importance, satisfaction)?;
    Ok(select(domains, values, Direction::Min))
}

/// `argmax_d λ_d E_{P_d}[I]`, i.e. the domain with the largest ranking-score
/// summarization weight. Criterion values are the normalized weights.
pub fn preponderant_domain(domains: &DomainSet, importance: &Importance) -> Result<Selection> {
    let terms = weighted_expectations(domains, importance.as_variable())?;
    let total: f64 = terms.iter().sum();
    if total <= SCORE_DOMAIN_TOLERANCE {
        return Err(Error::OutsideScoreDomain { denominator: total });
    }
    let weights = terms.into_iter().map(|t| t / total).collect();
    Ok(select(domains, weights, Direction::Max))
}

/// `argmax_d R_I(summarize(D ∖ {d}))`. Criterion values are the ranking
/// scores of the ablated mixtures.
pub fn bottleneck_domain(
    domains: &DomainSet,
    importance: &Importance,
    satisfaction: &RandomVariable,
) -> Result<Selection> {
    if domains.len() < 2 {
        return Err(Error::TooFewDomains(domains.len()));
    }
    let score = RankingScore::new(importance.clone(), satisfaction.clone())?;
    let mut values = Vec::with_capacity(domains.len());
    let mut undefined = Vec::new();
    for (index, d) in domains.iter().enumerate() {
        let ablated = match domains.without(index) {
            Ok(rest) => summarize(&rest),
            Err(Error::ZeroTotalWeight) => {
                undefined.push(d.id().to_owned());
                continue;
            }
            Err(e) => return Err(e),
        };
        match score.evaluate(&ablated) {
            Ok(v) => values.push(v),
            Err(Error::OutsideScoreDomain { .. }) => undefined.push(d.id().to_owned()),
            Err(e) => return Err(e),
        }
    }
    if !undefined.is_empty() {
        return Err(Error::UndefinedAblation(undefined));
    }
    Ok(select(domains, values, Direction::Max))
}
