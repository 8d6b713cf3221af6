//! Evaluation: overlap metrics, seeded splits and the experiment runner.

mod dataset;
mod experiment;
mod metrics;
mod report;
mod split;

pub use dataset::Dataset;
pub use experiment::{run_experiment, ExperimentConfig, ModelKind, DEFAULT_TRAIN_FRACTIONS};
pub use metrics::{entry_metrics, EntryMetrics, MetricAccumulator, MetricSet};
pub use report::{ComponentReport, EvalReport, ModelReport, ReportFormat, SplitReport};
pub use split::{split, split_indices};
