mod clean;
mod eval;
mod predict;
mod stats;
mod synth;
mod train;

use std::io::BufReader;
use std::path::Path;

pub use clean::clean;
pub use eval::eval;
pub use predict::predict;
pub use stats::stats;
pub use synth::synth;
pub use train::train;

use reaction_lens::{
    clean_message, load_corpus, CleanConfig, ColumnMap, CorpusFormat, PostRecord, Stopwords,
};

use crate::error::{CliError, CliResult};
use crate::io::{is_stdio, open_input, HashingReader};
use crate::manifest::RunManifest;

pub(crate) fn column_map(columns: Option<&str>) -> CliResult<ColumnMap> {
    let map = ColumnMap::default();
    Ok(match columns {
        Some(spec) => map.with_overrides(spec)?,
        None => map,
    })
}

pub(crate) fn corpus_format(explicit: Option<CorpusFormat>, path: &Path) -> CorpusFormat {
    explicit.unwrap_or_else(|| CorpusFormat::from_path(path))
}

pub(crate) fn load_stopwords(path: Option<&Path>) -> CliResult<Stopwords> {
    match path {
        None => Ok(Stopwords::default()),
        Some(path) => {
            let file = std::fs::File::open(path).map_err(CliError::io(path))?;
            Ok(Stopwords::from_reader(BufReader::new(file))?)
        }
    }
}

/// How message text becomes words.
pub(crate) enum Tokenizer {
    Whitespace,
    Clean(CleanConfig),
}

impl Tokenizer {
    pub fn new(clean: bool, stopwords: Option<&Path>) -> CliResult<Self> {
        if clean {
            let stopwords = load_stopwords(stopwords)?;
            Ok(Tokenizer::Clean(CleanConfig { stopwords, ..Default::default() }))
        } else {
            Ok(Tokenizer::Whitespace)
        }
    }

    pub fn tokens(&self, message: &str) -> Vec<String> {
        match self {
            Tokenizer::Whitespace => message.split_whitespace().map(str::to_owned).collect(),
            Tokenizer::Clean(config) => clean_message(message, config).tokens,
        }
    }
}

/// Streams the records of a corpus file through `each`.
///
/// With a manifest, the input's checksum and the malformed-row ledger are
/// recorded in it.
pub(crate) fn for_each_record<F>(
    path: &Path,
    format: CorpusFormat,
    map: &ColumnMap,
    manifest: Option<&mut RunManifest>,
    mut each: F,
) -> CliResult<()>
where
    F: FnMut(PostRecord) -> CliResult<()>,
{
    let mut source = HashingReader::new(open_input(path)?);
    let mut reader = load_corpus(&mut source, format, map)?;
    for record in reader.by_ref() {
        each(record?)?;
    }
    let ledger = reader.into_ledger();
    if let Some(manifest) = manifest {
        manifest.row_errors(&ledger);
        let (sha256, bytes) = source.finish().map_err(CliError::io(path))?;
        manifest.input(path, sha256, bytes);
    }
    if !ledger.is_empty() {
        eprintln!("{}: skipped {} malformed row(s)", path.display(), ledger.len());
    }
    Ok(())
}

pub(crate) fn require_file(path: &Path, why: &str) -> CliResult<()> {
    if is_stdio(path) {
        Err(CliError::Usage(format!("{why} needs a file input, not stdin")))
    } else {
        Ok(())
    }
}
