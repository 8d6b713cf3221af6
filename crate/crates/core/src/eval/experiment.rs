//! The train/test experiment runner.
//!
//! For every model, train fraction and run: split the model's eligible
//! entries, build a lexicon on the train side, predict every test entry,
//! average the per-entry metrics into a run value, then average runs.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dataset::Dataset;
use super::metrics::{entry_metrics, MetricAccumulator, MetricSet};
use super::report::{ComponentReport, EvalReport, ModelReport, SplitReport};
use super::split::{check_fraction, split_indices};
use crate::engine::{normalize, Lexicon, LexiconBuilder};
use crate::error::{Error, Result};
use crate::reaction::Schema;
use crate::star::{discretize_star, gaussian_similarity, star_normalize, Polarities, StarRange, StarSentiment};

/// Which of the three models to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Core,
    All,
    Star,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [ModelKind::Core, ModelKind::All, ModelKind::Star];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Core => "core",
            ModelKind::All => "all",
            ModelKind::Star => "star",
        }
    }

    pub fn schema(self) -> Schema {
        match self {
            ModelKind::Core => Schema::Core,
            ModelKind::All => Schema::All,
            ModelKind::Star => Schema::Star4,
        }
    }

    /// Names of the rows this model reports.
    pub fn report_components(self) -> Vec<String> {
        match self {
            ModelKind::Star => vec!["positive".into(), "negative".into(), "star_rating".into()],
            other => other
                .schema()
                .component_names()
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown model `{s}`")))
    }
}

pub const DEFAULT_TRAIN_FRACTIONS: [f64; 5] = [0.95, 0.90, 0.80, 0.70, 0.50];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub models: Vec<ModelKind>,
    pub train_fractions: Vec<f64>,
    pub runs: usize,
    /// Run `i` splits with seed `seed + i`.
    pub seed: u64,
    /// Width of the Gaussian similarity used for the star value.
    pub sigma: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            models: ModelKind::ALL.to_vec(),
            train_fractions: DEFAULT_TRAIN_FRACTIONS.to_vec(),
            runs: 5,
            seed: 0,
            sigma: 1.0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.models.is_empty() {
            return Err(Error::InvalidConfig("no model selected".into()));
        }
        if self.train_fractions.is_empty() {
            return Err(Error::InvalidConfig("no train fraction given".into()));
        }
        for &f in &self.train_fractions {
            check_fraction(f)?;
        }
        if self.runs == 0 {
            return Err(Error::InvalidConfig("runs must be at least 1".into()));
        }
        if self.sigma.is_nan() || self.sigma <= 0.0 {
            return Err(Error::NonPositiveSigma(self.sigma));
        }
        Ok(())
    }
}

/// Entries a model can use, with their targets.
enum Targets {
    Distribution { schema: Schema, items: Vec<(usize, Vec<f64>)> },
    Star { items: Vec<(usize, Polarities)> },
}

impl Targets {
    fn prepare(dataset: &Dataset, model: ModelKind) -> Self {
        match model {
            ModelKind::Core | ModelKind::All => {
                let schema = model.schema();
                let items = (0..dataset.len())
                    .filter_map(|i| {
                        normalize(dataset.counts(i), schema)
                            .ok()
                            .map(|v| (i, v.into_values()))
                    })
                    .collect();
                Targets::Distribution { schema, items }
            }
            ModelKind::Star => Targets::Star {
                items: (0..dataset.len())
                    .filter_map(|i| star_normalize(dataset.counts(i)).ok().map(|p| (i, p)))
                    .collect(),
            },
        }
    }

    fn len(&self) -> usize {
        match self {
            Targets::Distribution { items, .. } => items.len(),
            Targets::Star { items } => items.len(),
        }
    }
}

/// Outcome of a single run: mean metrics per reported component.
#[derive(Debug, Clone)]
struct RunResult {
    metrics: Vec<MetricSet>,
    coverage: f64,
    train_size: usize,
    test_size: usize,
}

fn run_distribution(
    dataset: &Dataset,
    schema: Schema,
    items: &[(usize, Vec<f64>)],
    train: &[usize],
    test: &[usize],
) -> Result<RunResult> {
    let mut builder = LexiconBuilder::<u32>::new(schema);
    for &t in train {
        let (entry, vector) = &items[t];
        builder.add_entry(dataset.words(*entry), vector)?;
    }
    let lexicon = builder.finalize();
    let mut acc = MetricAccumulator::new(schema.dim());
    let mut coverage = 0.0;
    for &t in test {
        let (entry, actual) = &items[t];
        let prediction = lexicon.predict(dataset.words(*entry))?;
        let metrics = entry_metrics(actual, prediction.vector.values())?;
        acc.add(&metrics.components);
        coverage += prediction.coverage;
    }
    Ok(RunResult {
        metrics: acc.means(),
        coverage: coverage / test.len() as f64,
        train_size: train.len(),
        test_size: test.len(),
    })
}

/// Metrics of one star-model test entry: positive, negative, star rating.
pub(crate) fn star_entry_metrics(actual: &StarSentiment, predicted: &[f64], sigma: f64) -> Result<[MetricSet; 3]> {
    let mass = predicted[0] + predicted[1];
    let pair = if mass > 0.0 {
        [predicted[0] / mass, predicted[1] / mass]
    } else {
        [predicted[0], predicted[1]]
    };
    let polar = entry_metrics(&[actual.positive, actual.negative], &pair)?;
    let predicted_star = predicted[3].clamp(1.0, 5.0);
    let similarity = gaussian_similarity(predicted_star, actual.star, sigma)?;
    let hit = discretize_star(predicted_star) == actual.star_discrete;
    Ok([
        polar.components[0],
        polar.components[1],
        MetricSet::exact_match(hit, similarity),
    ])
}

fn run_star(
    dataset: &Dataset,
    items: &[(usize, Polarities)],
    train: &[usize],
    test: &[usize],
    sigma: f64,
) -> Result<RunResult> {
    let range = StarRange::from_aggregates(train.iter().map(|&t| items[t].1.aggregate()))?;
    let mut builder = LexiconBuilder::<u32>::new(Schema::Star4);
    for &t in train {
        let (entry, p) = items[t];
        let vector = StarSentiment::from_polarities(p, &range).to_array();
        builder.add_entry(dataset.words(entry), &vector)?;
    }
    let lexicon: Lexicon<u32> = builder.finalize();
    let mut acc = MetricAccumulator::new(3);
    let mut coverage = 0.0;
    for &t in test {
        let (entry, p) = items[t];
        let actual = StarSentiment::from_polarities(p, &range);
        let prediction = lexicon.predict(dataset.words(entry))?;
        acc.add(&star_entry_metrics(&actual, prediction.vector.values(), sigma)?);
        coverage += prediction.coverage;
    }
    Ok(RunResult {
        metrics: acc.means(),
        coverage: coverage / test.len() as f64,
        train_size: train.len(),
        test_size: test.len(),
    })
}

fn run_once(dataset: &Dataset, targets: &Targets, fraction: f64, seed: u64, sigma: f64) -> Result<RunResult> {
    let (train, test) = split_indices(targets.len(), fraction, seed)?;
    match targets {
        Targets::Distribution { schema, items } => run_distribution(dataset, *schema, items, &train, &test),
        Targets::Star { items } => run_star(dataset, items, &train, &test, sigma),
    }
}

/// Runs every configured model, split and run, in parallel.
pub fn run_experiment(dataset: &Dataset, config: &ExperimentConfig) -> Result<EvalReport> {
    config.validate()?;
    let mut models = Vec::with_capacity(config.models.len());
    for &model in &config.models {
        let targets = Targets::prepare(dataset, model);
        let jobs: Vec<(usize, usize)> = (0..config.train_fractions.len())
            .flat_map(|f| (0..config.runs).map(move |r| (f, r)))
            .collect();
        let results: Vec<RunResult> = jobs
            .par_iter()
            .map(|&(f, r)| {
                run_once(
                    dataset,
                    &targets,
                    config.train_fractions[f],
                    config.seed.wrapping_add(r as u64),
                    config.sigma,
                )
            })
            .collect::<Result<_>>()?;

        let components = model.report_components();
        let splits = config
            .train_fractions
            .iter()
            .zip(results.chunks(config.runs))
            .map(|(&fraction, runs)| SplitReport::from_runs(
                fraction,
                &components,
                runs.iter().map(|r| (r.metrics.clone(), r.coverage)).collect(),
                runs[0].train_size,
                runs[0].test_size,
            ))
            .collect();
        models.push(ModelReport {
            model,
            eligible_entries: targets.len(),
            note: (model == ModelKind::Star).then(|| STAR_NOTE.to_owned()),
            splits,
        });
    }
    Ok(EvalReport {
        seed: config.seed,
        runs: config.runs,
        sigma: config.sigma,
        models,
    })
}

const STAR_NOTE: &str = "positive/negative: overlap metrics on the normalized (E_P, E_N) pair; \
star_rating: accuracy is the Gaussian similarity of predicted and actual star, \
recall/precision/f1 score an exact match of the 0.5-step star bin";

impl SplitReport {
    fn from_runs(
        train_fraction: f64,
        components: &[String],
        runs: Vec<(Vec<MetricSet>, f64)>,
        train_size: usize,
        test_size: usize,
    ) -> Self {
        let n = runs.len() as f64;
        let reactions = components
            .iter()
            .enumerate()
            .map(|(c, name)| {
                let per_run: Vec<MetricSet> = runs.iter().map(|(m, _)| m[c]).collect();
                let mut mean = [0.0; 4];
                for m in &per_run {
                    for (s, v) in mean.iter_mut().zip(m.as_array()) {
                        *s += v;
                    }
                }
                let [accuracy, recall, precision, f1] = mean.map(|s| s / n);
                ComponentReport {
                    reaction: name.clone(),
                    mean: MetricSet {
                        accuracy,
                        recall,
                        precision,
                        f1,
                    },
                    per_run,
                }
            })
            .collect();
        SplitReport {
            train_fraction,
            train_size,
            test_size,
            coverage: runs.iter().map(|(_, c)| *c).collect(),
            reactions,
        }
    }
}
