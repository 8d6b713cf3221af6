use std::path::Path;

use reaction_lens::{
    normalize, save_lexicon, star_normalize, ColumnMap, CorpusFormat, Error, LexiconBuilder, ModelKind,
    StarRange, StarSentiment,
};

use super::{column_map, corpus_format, for_each_record, require_file, Tokenizer};
use crate::config::{required, TrainSettings};
use crate::error::CliResult;
use crate::io::write_output;
use crate::manifest::{manifest_path, manifest_ref, RunManifest};

pub fn train(settings: TrainSettings) -> CliResult<()> {
    let mut manifest = RunManifest::start("train", &settings)?;
    let input = required(settings.input.as_deref(), "input")?;
    let output = settings.output.as_deref();
    let model = settings.model.unwrap_or(ModelKind::Core);
    let tokenizer = Tokenizer::new(settings.clean.unwrap_or(false), settings.stopwords.as_deref())?;
    let map = column_map(settings.columns.as_deref())?;
    let format = corpus_format(settings.format, input);
    let corpus = Corpus { path: input, format, map: &map, tokenizer: &tokenizer };

    let mut builder = LexiconBuilder::<String>::new(model.schema());
    let mut excluded = 0u64;
    let mut extra: Vec<(String, String)> = vec![("model".into(), model.name().into())];
    match model {
        ModelKind::Core | ModelKind::All => {
            corpus.stream(Some(&mut manifest), |tokens, counts| {
                match normalize(counts, model.schema()) {
                    Ok(v) => builder.add_entry(tokens.iter().map(String::as_str), v.values())?,
                    Err(Error::ZeroReactionTotal(_)) => excluded += 1,
                    Err(e) => return Err(e.into()),
                }
                Ok(())
            })?;
        }
        ModelKind::Star => {
            require_file(input, "training the star model")?;
            // First pass: the aggregate range that anchors the star scale.
            let mut bounds: Option<(f64, f64)> = None;
            corpus.stream(Some(&mut manifest), |_, counts| {
                match star_normalize(counts) {
                    Ok(p) => {
                        let e = p.aggregate();
                        bounds = Some(bounds.map_or((e, e), |(lo, hi)| (lo.min(e), hi.max(e))));
                    }
                    Err(Error::ZeroReactionTotal(_)) => excluded += 1,
                    Err(e) => return Err(e.into()),
                }
                Ok(())
            })?;
            let (lo, hi) = bounds.ok_or(Error::EmptyTrainingSet)?;
            let range = StarRange::new(lo, hi)?;
            corpus.stream(None, |tokens, counts| {
                if let Ok(p) = star_normalize(counts) {
                    let v = StarSentiment::from_polarities(p, &range).to_array();
                    builder.add_entry(tokens.iter().map(String::as_str), &v)?;
                }
                Ok(())
            })?;
            extra.push(("star_min".into(), format!("{:e}", range.min)));
            extra.push(("star_max".into(), format!("{:e}", range.max)));
        }
    }

    let lexicon = builder.finalize();
    manifest.drop_count("zero_reaction_total", excluded);
    eprintln!(
        "train: {} model, {} entries, {} words, {excluded} rows without {} reactions",
        model,
        lexicon.train_entries(),
        lexicon.len(),
        model.schema()
    );
    if lexicon.train_mean().is_none() {
        eprintln!("train: warning: no usable training rows; predictions from this lexicon will fail");
    }

    let manifest_file = manifest_path(settings.manifest.as_deref(), output);
    if let Some(name) = manifest_ref(manifest_file.as_deref()) {
        extra.push(("manifest".into(), name));
    }
    let extra: Vec<(&str, &str)> = extra.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
    write_output(output, |sink| Ok(save_lexicon(&lexicon, sink, &extra)?))?;
    if let Some(path) = output {
        manifest.output(path);
    }
    manifest.finish(manifest_file.as_deref())
}

struct Corpus<'a> {
    path: &'a Path,
    format: CorpusFormat,
    map: &'a ColumnMap,
    tokenizer: &'a super::Tokenizer,
}

impl Corpus<'_> {
    fn stream<F>(&self, manifest: Option<&mut RunManifest>, mut each: F) -> CliResult<()>
    where
        F: FnMut(&[String], &reaction_lens::ReactionCounts) -> CliResult<()>,
    {
        for_each_record(self.path, self.format, self.map, manifest, |record| {
            let tokens = self.tokenizer.tokens(&record.message);
            each(&tokens, &record.reactions)
        })
    }
}
