
use reaction_lens::eval::{ReportFormat, DEFAULT_TRAIN_FRACTIONS};
use reaction_lens::{run_experiment, Dataset, ExperimentConfig, ModelKind};

use super::{column_map, corpus_format, for_each_record, Tokenizer};
use crate::config::{required, train_fraction, EvalSettings};
use crate::error::{CliError, CliResult};
use crate::io::write_output;
use crate::manifest::{manifest_path, manifest_ref, RunManifest};

pub fn eval(settings: EvalSettings) -> CliResult<()> {
    let mut manifest = RunManifest::start("eval", &settings)?;
    let input = required(settings.input.as_deref(), "input")?;
    let output = settings.output.as_deref();
    let defaults = ExperimentConfig::default();
    let config = ExperimentConfig {
        models: settings.model.clone().filter(|m| !m.is_empty()).unwrap_or_else(|| ModelKind::ALL.to_vec()),
        train_fractions: match &settings.splits {
            Some(splits) if !splits.is_empty() => {
                splits.iter().map(|&s| train_fraction(s)).collect::<CliResult<_>>()?
            }
            _ => DEFAULT_TRAIN_FRACTIONS.to_vec(),
        },
        runs: settings.runs.unwrap_or(defaults.runs),
        seed: settings.seed.unwrap_or(defaults.seed),
        sigma: settings.sigma.unwrap_or(defaults.sigma),
    };
    config.validate()?;
    let report_format = settings
        .report_format
        .or_else(|| output.map(ReportFormat::from_path))
        .unwrap_or(ReportFormat::Json);

    let tokenizer = Tokenizer::new(settings.clean.unwrap_or(false), settings.stopwords.as_deref())?;
    let map = column_map(settings.columns.as_deref())?;
    let mut dataset = Dataset::new();
    for_each_record(input, corpus_format(settings.format, input), &map, Some(&mut manifest), |record| {
        let tokens = tokenizer.tokens(&record.message);
        dataset.push(tokens.iter().map(String::as_str), record.reactions);
        Ok(())
    })?;
    eprintln!(
        "eval: {} entries, {} distinct words, {} model(s) x {} split(s) x {} run(s)",
        dataset.len(),
        dataset.vocabulary_size(),
        config.models.len(),
        config.train_fractions.len(),
        config.runs
    );

    let report = run_experiment(&dataset, &config)?;
    let rows = dataset.len();
    drop(dataset);
    for model in &report.models {
        let excluded = rows.saturating_sub(model.eligible_entries) as u64;
        manifest.drop_count(&format!("zero_total_{}", model.model), excluded);
    }

    let manifest_file = manifest_path(settings.manifest.as_deref(), output);
    write_output(output, |sink| match report_format {
        ReportFormat::Json => {
            let mut value = serde_json::to_value(&report)?;
            if let (Some(name), Some(object)) = (manifest_ref(manifest_file.as_deref()), value.as_object_mut()) {
                object.insert("manifest".into(), name.into());
            }
            serde_json::to_writer_pretty(&mut *sink, &value)?;
            writeln!(sink).map_err(CliError::io("<output>"))
        }
        ReportFormat::Csv => Ok(report.write_csv(sink)?),
    })?;
    if let Some(path) = output {
        manifest.output(path);
    }
    manifest.finish(manifest_file.as_deref())
}
