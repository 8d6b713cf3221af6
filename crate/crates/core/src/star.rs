//! Star-rating model.
//!
//! Love and Wow count as positive, Sad and Angry as negative, and Haha is
//! left out entirely (as are Like and Thankful). Each entry gets a
//! positive mass `E_P` and negative mass `E_N` over those four reactions,
//! an aggregate `E = E_P - E_N`, and a star value obtained by min-max
//! scaling `E` onto `[1, 5]` with the training set's range.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reaction::{Reaction, ReactionCounts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
    Uncertain,
}

/// Polarity of a reaction; `None` for reactions outside the star model.
pub fn polarity(reaction: Reaction) -> Option<Polarity> {
    match reaction {
        Reaction::Love | Reaction::Wow => Some(Polarity::Positive),
        Reaction::Sad | Reaction::Angry => Some(Polarity::Negative),
        Reaction::Haha => Some(Polarity::Uncertain),
        Reaction::Like | Reaction::Thankful => None,
    }
}

/// Positive and negative mass of an entry; they sum to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarities {
    pub positive: f64,
    pub negative: f64,
}

impl Polarities {
    /// Aggregate sentiment `E_P - E_N`, in `[-1, 1]`.
    pub fn aggregate(&self) -> f64 {
        self.positive - self.negative
    }
}

pub fn star_normalize(counts: &ReactionCounts) -> Result<Polarities> {
    let positive = counts.love + counts.wow;
    let negative = counts.sad + counts.angry;
    let total = positive + negative;
    if total == 0 {
        return Err(Error::ZeroReactionTotal(crate::reaction::Schema::Star4));
    }
    let total = total as f64;
    Ok(Polarities {
        positive: counts.love as f64 / total + counts.wow as f64 / total,
        negative: counts.sad as f64 / total + counts.angry as f64 / total,
    })
}

/// Observed `[min, max]` of the aggregate sentiment over a training set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarRange {
    pub min: f64,
    pub max: f64,
}

impl StarRange {
    pub fn new(min: f64, max: f64) -> Result<Self> {
        if max > min {
            Ok(StarRange { min, max })
        } else {
            Err(Error::DegenerateRange(min))
        }
    }

    /// Range of the given aggregates. Needs two distinct values.
    pub fn from_aggregates<I: IntoIterator<Item = f64>>(values: I) -> Result<Self> {
        let mut it = values.into_iter();
        let first = it.next().ok_or(Error::EmptyTrainingSet)?;
        let (min, max) = it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e)));
        StarRange::new(min, max)
    }

    pub fn merge(self, other: StarRange) -> StarRange {
        StarRange {
            min: self.min.min(other.min),
            max: self.max.max(other.max),
        }
    }

    /// Maps `aggregate` onto `[1, 5]`, clamping values outside the range.
    pub fn scale(&self, aggregate: f64) -> f64 {
        let s = 4.0 * ((aggregate - self.min) / (self.max - self.min)) + 1.0;
        s.clamp(1.0, 5.0)
    }
}

/// Min-max scaling of one aggregate onto the star scale.
pub fn star_scale(aggregate: f64, corpus_min: f64, corpus_max: f64) -> Result<f64> {
    Ok(StarRange::new(corpus_min, corpus_max)?.scale(aggregate))
}

/// Rounds a star value to the nearest multiple of 0.5, midpoints up.
pub fn discretize_star(star: f64) -> f64 {
    (star * 2.0 + 0.5).floor() / 2.0
}

/// The per-entry sentiment record `[E_P, E_N, S', S]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StarSentiment {
    pub positive: f64,
    pub negative: f64,
    /// Star value snapped to the 0.5 grid.
    pub star_discrete: f64,
    /// Continuous star value in `[1, 5]`.
    pub star: f64,
}

impl StarSentiment {
    pub fn from_polarities(p: Polarities, range: &StarRange) -> Self {
        let star = range.scale(p.aggregate());
        StarSentiment {
            positive: p.positive,
            negative: p.negative,
            star_discrete: discretize_star(star),
            star,
        }
    }

    /// Components in `star4` schema order.
    pub fn to_array(&self) -> [f64; 4] {
        [self.positive, self.negative, self.star_discrete, self.star]
    }

    pub fn aggregate(&self) -> f64 {
        self.positive - self.negative
    }
}

/// Computes sentiment vectors for a training set and the range they were
/// scaled with. Entries whose four star reactions are all zero must be
/// filtered out beforehand.
pub fn build_star_vectors(polarities: &[Polarities]) -> Result<(Vec<StarSentiment>, StarRange)> {
    let range = StarRange::from_aggregates(polarities.iter().map(Polarities::aggregate))?;
    let vectors = polarities
        .iter()
        .map(|&p| StarSentiment::from_polarities(p, &range))
        .collect();
    Ok((vectors, range))
}

/// Gaussian kernel similarity `exp(-(a - b)^2 / (2 sigma^2))`.
pub fn gaussian_similarity(predicted: f64, actual: f64, sigma: f64) -> Result<f64> {
    if sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::NonPositiveSigma(sigma));
    }
    let d = predicted - actual;
    Ok((-(d * d) / (2.0 * sigma * sigma)).exp())
}
