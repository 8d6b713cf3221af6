//! Evaluation reports and their JSON / CSV forms.
//!
//! The CSV has one row per (model, split, reaction, metric) with columns
//! `model,split_percent,reaction,metric,value,runs,seed`, which plots
//! directly as F1-versus-split curves.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::experiment::ModelKind;
use super::metrics::MetricSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub seed: u64,
    pub runs: usize,
    pub sigma: f64,
    pub models: Vec<ModelReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub model: ModelKind,
    /// Entries with a non-zero reaction total for this model.
    pub eligible_entries: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub splits: Vec<SplitReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitReport {
    pub train_fraction: f64,
    pub train_size: usize,
    pub test_size: usize,
    /// Mean fraction of test words found in the lexicon, per run.
    pub coverage: Vec<f64>,
    pub reactions: Vec<ComponentReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub reaction: String,
    /// Mean over runs.
    pub mean: MetricSet,
    pub per_run: Vec<MetricSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

impl ReportFormat {
    /// `.csv` files get CSV, anything else JSON.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => ReportFormat::Csv,
            _ => ReportFormat::Json,
        }
    }
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::InvalidConfig(format!("unknown report format `{other}`"))),
        }
    }
}

impl EvalReport {
    pub fn model(&self, model: ModelKind) -> Option<&ModelReport> {
        self.models.iter().find(|m| m.model == model)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::CorruptArtifact(e.to_string()))
    }

    pub fn write_csv<W: Write>(&self, sink: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(sink);
        let io = |e: csv::Error| Error::Io(e.into());
        w.write_record(["model", "split_percent", "reaction", "metric", "value", "runs", "seed"])
            .map_err(io)?;
        let runs = self.runs.to_string();
        let seed = self.seed.to_string();
        for model in &self.models {
            for split in &model.splits {
                let percent = split_percent(split.train_fraction);
                for component in &split.reactions {
                    for (metric, value) in MetricSet::NAMES.iter().zip(component.mean.as_array()) {
                        w.write_record([
                            model.model.name(),
                            &percent,
                            &component.reaction,
                            metric,
                            &value.to_string(),
                            &runs,
                            &seed,
                        ])
                        .map_err(io)?;
                    }
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn write<W: Write>(&self, format: ReportFormat, mut sink: W) -> Result<()> {
        match format {
            ReportFormat::Json => {
                sink.write_all(self.to_json()?.as_bytes())?;
                sink.write_all(b"\n")?;
                Ok(())
            }
            ReportFormat::Csv => self.write_csv(sink),
        }
    }
}

fn split_percent(fraction: f64) -> String {
    let percent = fraction * 100.0;
    let rounded = (percent * 1e6).round() / 1e6;
    rounded.to_string()
}
