//! Per-entry overlap metrics.
//!
//! Both vectors are treated as unit mass spread over the same bins. The
//! accuracy of a bin is the mass the two vectors share there,
//! `min(actual, predicted)`; recall and precision are that overlap relative
//! to the actual and predicted mass respectively.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Accuracy, recall, precision and F1 for one component.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricSet {
    pub accuracy: f64,
    pub recall: f64,
    pub precision: f64,
    pub f1: f64,
}

impl MetricSet {
    pub const NAMES: [&'static str; 4] = ["accuracy", "recall", "precision", "f1"];

    pub fn as_array(&self) -> [f64; 4] {
        [self.accuracy, self.recall, self.precision, self.f1]
    }

    /// Metrics for a single component pair.
    ///
    /// A zero actual mass gives recall 1 and a zero predicted mass gives
    /// precision 1, so agreeing on absence scores 1 everywhere while a
    /// one-sided zero scores F1 0.
    pub fn overlap(actual: f64, predicted: f64) -> Self {
        let accuracy = actual.min(predicted);
        let recall = if actual == 0.0 { 1.0 } else { accuracy / actual };
        let precision = if predicted == 0.0 { 1.0 } else { accuracy / predicted };
        let f1 = if recall + precision == 0.0 {
            0.0
        } else {
            2.0 * recall * precision / (recall + precision)
        };
        MetricSet {
            accuracy,
            recall,
            precision,
            f1,
        }
    }

    /// Metrics of an exact-match test: all ones on a hit, zeros on a miss.
    pub fn exact_match(hit: bool, accuracy: f64) -> Self {
        let v = if hit { 1.0 } else { 0.0 };
        MetricSet {
            accuracy,
            recall: v,
            precision: v,
            f1: v,
        }
    }
}

/// Metrics of one test entry, one [`MetricSet`] per component.
#[derive(Debug, Clone, PartialEq)]
pub struct EntryMetrics {
    pub components: Vec<MetricSet>,
}

impl EntryMetrics {
    pub fn accuracy_sum(&self) -> f64 {
        self.components.iter().map(|m| m.accuracy).sum()
    }
}

pub fn entry_metrics(actual: &[f64], predicted: &[f64]) -> Result<EntryMetrics> {
    if actual.len() != predicted.len() {
        return Err(Error::SchemaMismatch(format!(
            "actual has {} components, predicted has {}",
            actual.len(),
            predicted.len()
        )));
    }
    Ok(EntryMetrics {
        components: actual
            .iter()
            .zip(predicted)
            .map(|(&n, &m)| MetricSet::overlap(n, m))
            .collect(),
    })
}

/// Running mean of [`MetricSet`]s for several components.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricAccumulator {
    sums: Vec<[f64; 4]>,
    count: usize,
}

impl MetricAccumulator {
    pub fn new(components: usize) -> Self {
        MetricAccumulator {
            sums: vec![[0.0; 4]; components],
            count: 0,
        }
    }

    pub fn add(&mut self, metrics: &[MetricSet]) {
        debug_assert_eq!(metrics.len(), self.sums.len());
        for (sum, m) in self.sums.iter_mut().zip(metrics) {
            for (s, v) in sum.iter_mut().zip(m.as_array()) {
                *s += v;
            }
        }
        self.count += 1;
    }

    pub fn merge(&mut self, other: &MetricAccumulator) {
        for (a, b) in self.sums.iter_mut().zip(&other.sums) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        }
        self.count += other.count;
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn means(&self) -> Vec<MetricSet> {
        let n = self.count.max(1) as f64;
        self.sums
            .iter()
            .map(|s| MetricSet {
                accuracy: s[0] / n,
                recall: s[1] / n,
                precision: s[2] / n,
                f1: s[3] / n,
            })
            .collect()
    }
}
