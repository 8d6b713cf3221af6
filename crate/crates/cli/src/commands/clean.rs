use reaction_lens::{clean_message, normalize, CleanConfig, CorpusWriter, Schema};

use super::{column_map, corpus_format, for_each_record, load_stopwords};
use crate::config::{required, CleanSettings};
use crate::error::CliResult;
use crate::io::write_output;
use crate::manifest::{manifest_path, RunManifest};

pub fn clean(settings: CleanSettings) -> CliResult<()> {
    let mut manifest = RunManifest::start("clean", &settings)?;
    let input = required(settings.input.as_deref(), "input")?;
    let output = settings.output.as_deref();
    // Fail on a bad stopword file before any output exists.
    let config = CleanConfig {
        stopwords: load_stopwords(settings.stopwords.as_deref())?,
        casefold_ascii: settings.casefold.unwrap_or(false),
        ..Default::default()
    };
    let map = column_map(settings.columns.as_deref())?;
    let in_format = corpus_format(settings.format, input);
    let out_format = match (settings.format, output) {
        (Some(f), _) => f,
        (None, Some(path)) if path.extension().is_some() => corpus_format(None, path),
        _ => in_format,
    };

    let (mut read, mut written, mut empty, mut zero_core, mut zero_all) = (0u64, 0u64, 0u64, 0u64, 0u64);
    write_output(output, |sink| {
        let mut writer = CorpusWriter::new(sink, out_format, map.id.is_some())?;
        for_each_record(input, in_format, &map, Some(&mut manifest), |mut record| {
            read += 1;
            let cleaned = clean_message(&record.message, &config);
            if cleaned.tokens.is_empty() {
                empty += 1;
                return Ok(());
            }
            zero_core += u64::from(normalize(&record.reactions, Schema::Core).is_err());
            zero_all += u64::from(normalize(&record.reactions, Schema::All).is_err());
            record.message = cleaned.text;
            writer.write(&record)?;
            written += 1;
            Ok(())
        })?;
        writer.finish()?;
        Ok(())
    })?;

    manifest.drop_count("empty_after_clean", empty);
    manifest.flag_count("zero_core_total", zero_core);
    manifest.flag_count("zero_all_total", zero_all);
    let malformed = manifest.drops.get("malformed_row").copied().unwrap_or(0);
    eprintln!(
        "clean: {read} rows read, {written} written, {empty} empty after cleaning, {malformed} malformed; \
         {zero_core} kept rows have no core reactions"
    );
    if let Some(path) = output {
        manifest.output(path);
    }
    manifest.finish(manifest_path(settings.manifest.as_deref(), output).as_deref())
}
