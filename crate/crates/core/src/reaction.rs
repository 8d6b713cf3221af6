//! Reaction typology, raw per-post tallies, and the schemas vectors are
//! expressed over.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One reader reaction type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Reaction {
    Like,
    Love,
    Wow,
    Haha,
    Sad,
    Angry,
    Thankful,
}

impl Reaction {
    /// All seven reactions, in canonical column order.
    pub const ALL: [Reaction; 7] = [
        Reaction::Like,
        Reaction::Love,
        Reaction::Wow,
        Reaction::Haha,
        Reaction::Sad,
        Reaction::Angry,
        Reaction::Thankful,
    ];

    /// The five reactions of the core set.
    pub const CORE: [Reaction; 5] = [
        Reaction::Love,
        Reaction::Wow,
        Reaction::Haha,
        Reaction::Sad,
        Reaction::Angry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reaction::Like => "like",
            Reaction::Love => "love",
            Reaction::Wow => "wow",
            Reaction::Haha => "haha",
            Reaction::Sad => "sad",
            Reaction::Angry => "angry",
            Reaction::Thankful => "thankful",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Reaction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reaction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Reaction::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown reaction `{s}`")))
    }
}

/// Raw reaction tallies of a single post.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReactionCounts {
    pub like: u64,
    pub love: u64,
    pub wow: u64,
    pub haha: u64,
    pub sad: u64,
    pub angry: u64,
    pub thankful: u64,
}

impl ReactionCounts {
    pub fn get(&self, reaction: Reaction) -> u64 {
        self.as_array()[reaction.index()]
    }

    pub fn set(&mut self, reaction: Reaction, value: u64) {
        match reaction {
            Reaction::Like => self.like = value,
            Reaction::Love => self.love = value,
            Reaction::Wow => self.wow = value,
            Reaction::Haha => self.haha = value,
            Reaction::Sad => self.sad = value,
            Reaction::Angry => self.angry = value,
            Reaction::Thankful => self.thankful = value,
        }
    }

    /// Counts in [`Reaction::ALL`] order.
    pub fn as_array(&self) -> [u64; 7] {
        [
            self.like,
            self.love,
            self.wow,
            self.haha,
            self.sad,
            self.angry,
            self.thankful,
        ]
    }

    pub fn from_array(values: [u64; 7]) -> Self {
        let [like, love, wow, haha, sad, angry, thankful] = values;
        ReactionCounts {
            like,
            love,
            wow,
            haha,
            sad,
            angry,
            thankful,
        }
    }
}

/// The ordered component list a vector (and a lexicon) is expressed over.
///
/// `Core` and `All` are reaction distributions; `Star4` is the
/// `[positive, negative, star_discrete, star]` sentiment vector of the star
/// model, whose components are averaged independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Schema {
    Core,
    All,
    Star4,
}

const CORE_NAMES: [&str; 5] = ["love", "wow", "haha", "sad", "angry"];
const ALL_NAMES: [&str; 7] = ["like", "love", "wow", "haha", "sad", "angry", "thankful"];
const STAR_NAMES: [&str; 4] = ["positive", "negative", "star_discrete", "star"];

impl Schema {
    pub fn name(self) -> &'static str {
        match self {
            Schema::Core => "core",
            Schema::All => "all",
            Schema::Star4 => "star4",
        }
    }

    pub fn component_names(self) -> &'static [&'static str] {
        match self {
            Schema::Core => &CORE_NAMES,
            Schema::All => &ALL_NAMES,
            Schema::Star4 => &STAR_NAMES,
        }
    }

    pub fn dim(self) -> usize {
        self.component_names().len()
    }

    /// Reactions a distribution schema is normalized over; `None` for `Star4`.
    pub fn reactions(self) -> Option<&'static [Reaction]> {
        match self {
            Schema::Core => Some(&Reaction::CORE),
            Schema::All => Some(&Reaction::ALL),
            Schema::Star4 => None,
        }
    }

    /// Whether vectors of this schema are probability distributions.
    pub fn is_distribution(self) -> bool {
        self.reactions().is_some()
    }

    pub(crate) fn check_dim(self, found: usize) -> Result<()> {
        if found == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                schema: self,
                expected: self.dim(),
                found,
            })
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Schema {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Schema::Core),
            "all" => Ok(Schema::All),
            "star4" => Ok(Schema::Star4),
            other => Err(Error::InvalidConfig(format!("unknown schema `{other}`"))),
        }
    }
}

/// A vector over the components of a [`Schema`].
///
/// For distribution schemas every component lies in `[0, 1]` and the
/// components sum to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReactionVector(Vec<f64>);

impl ReactionVector {
    pub fn new(values: Vec<f64>) -> Self {
        ReactionVector(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// True when the vector is a distribution within `tol` of unit sum.
    pub fn is_distribution(&self, tol: f64) -> bool {
        self.0.iter().all(|v| (0.0..=1.0).contains(v)) && (self.sum() - 1.0).abs() <= tol
    }
}

impl std::ops::Index<usize> for ReactionVector {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.0[index]
    }
}

impl From<Vec<f64>> for ReactionVector {
    fn from(values: Vec<f64>) -> Self {
        ReactionVector(values)
    }
}
