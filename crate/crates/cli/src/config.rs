//! Per-command settings, filled from flags first and a TOML file second.
//!
//! A config file may set any flag by its snake_case name at the top level
//! (applies to every command that has the flag) or inside a `[command]`
//! table (applies to that command only, and wins over the top level).

use std::path::{Path, PathBuf};

use reaction_lens::eval::ReportFormat;
use reaction_lens::{CorpusFormat, ModelKind};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const CONFIG_ENV: &str = "REACTION_LENS_CONFIG";

pub const COMMANDS: [&str; 6] = ["clean", "train", "predict", "eval", "stats", "synth"];

pub trait Settings: DeserializeOwned + Serialize + Default {
    const KEYS: &'static [&'static str];

    /// Fields set in `self` win; unset ones fall back to `base`.
    fn overlay(self, base: Self) -> Self;
}

macro_rules! settings {
    (
        $(#[$meta:meta])*
        $name:ident {
            $( $(#[$fmeta:meta])* $field:ident : $ty:ty ),* $(,)?
        }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Default, Clone, clap::Args, Serialize, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct $name {
            $( $(#[$fmeta])* pub $field: Option<$ty>, )*
        }

        impl Settings for $name {
            const KEYS: &'static [&'static str] = &[$(stringify!($field)),*];

            fn overlay(self, base: Self) -> Self {
                Self { $( $field: self.$field.or(base.$field), )* }
            }
        }
    };
}

settings! {
    CleanSettings {
        /// Raw corpus (CSV or JSONL); `-` reads stdin
        #[arg(long)]
        input: PathBuf,
        /// Cleaned corpus destination; stdout when omitted
        #[arg(long)]
        output: PathBuf,
        /// Stopword list, one word per line
        #[arg(long)]
        stopwords: PathBuf,
        /// Corpus format of input and output (default: from the file extension)
        #[arg(long)]
        format: CorpusFormat,
        /// Column overrides, e.g. `message=text,like=likes,id=post_id`
        #[arg(long)]
        columns: String,
        /// Lowercase ASCII letters before the stopword check
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        casefold: bool,
        /// Where to write the run manifest (default: `<output>.manifest.json`)
        #[arg(long)]
        manifest: PathBuf,
    }
}

settings! {
    TrainSettings {
        /// Cleaned corpus; `-` reads stdin (not for the star model)
        #[arg(long)]
        input: PathBuf,
        /// Lexicon destination
        #[arg(long)]
        output: PathBuf,
        /// core, all or star
        #[arg(long)]
        model: ModelKind,
        #[arg(long)]
        format: CorpusFormat,
        #[arg(long)]
        columns: String,
        /// Clean messages while reading (for raw corpora)
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        clean: bool,
        /// Stopwords used with `--clean`
        #[arg(long)]
        stopwords: PathBuf,
        #[arg(long)]
        manifest: PathBuf,
    }
}

settings! {
    PredictSettings {
        /// Lexicon written by `train`
        #[arg(long)]
        lexicon: PathBuf,
        /// Messages, one per line; stdin when omitted
        #[arg(long)]
        input: PathBuf,
        /// Predictions, one per line; stdout when omitted
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        stopwords: PathBuf,
        /// Treat messages as already cleaned and only split on whitespace
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        no_clean: bool,
    }
}

settings! {
    EvalSettings {
        /// Cleaned corpus
        #[arg(long)]
        input: PathBuf,
        /// Report destination; stdout when omitted
        #[arg(long)]
        output: PathBuf,
        /// Models to evaluate, comma separated (default: core,all,star)
        #[arg(long, value_delimiter = ',')]
        model: Vec<ModelKind>,
        /// Train fractions, as fractions or percents (default: 95,90,80,70,50)
        #[arg(long, value_delimiter = ',')]
        splits: Vec<f64>,
        /// Random splits per train fraction
        #[arg(long)]
        runs: usize,
        /// Base seed; run i uses seed + i
        #[arg(long)]
        seed: u64,
        /// Width of the Gaussian star similarity
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        format: CorpusFormat,
        #[arg(long)]
        columns: String,
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        clean: bool,
        #[arg(long)]
        stopwords: PathBuf,
        /// json or csv (default: from the output extension, else json)
        #[arg(long)]
        report_format: ReportFormat,
        #[arg(long)]
        manifest: PathBuf,
    }
}

settings! {
    StatsSettings {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long)]
        format: CorpusFormat,
        #[arg(long)]
        columns: String,
        /// Emit JSON instead of a table
        #[arg(long, num_args = 0..=1, default_missing_value = "true")]
        json: bool,
    }
}

settings! {
    SynthSettings {
        /// Corpus destination; stdout when omitted
        #[arg(long)]
        output: PathBuf,
        /// Where to write the per-word ground-truth affinities
        #[arg(long)]
        truth: PathBuf,
        #[arg(long)]
        format: CorpusFormat,
        #[arg(long)]
        seed: u64,
        /// Number of posts
        #[arg(long)]
        rows: usize,
        /// Number of distinct content words
        #[arg(long)]
        vocab: usize,
        /// Dirichlet concentration of word affinities; lower means a sharper signal
        #[arg(long)]
        concentration: f64,
        /// Fixed word affinities over love,wow,haha,sad,angry (config file only)
        #[arg(skip)]
        affinities: Vec<[f64; 5]>,
        #[arg(long)]
        min_words: usize,
        #[arg(long)]
        max_words: usize,
        /// Zipf exponent of word frequencies
        #[arg(long)]
        zipf: f64,
        /// Median reactions per post
        #[arg(long)]
        reaction_scale: f64,
        /// Log-normal spread of reactions per post
        #[arg(long)]
        reaction_spread: f64,
        /// Expected share of Like among all reactions
        #[arg(long)]
        like_dominance: f64,
        /// Beta concentration of the per-post Like share
        #[arg(long)]
        like_concentration: f64,
        #[arg(long)]
        thankful_fraction: f64,
        /// Probability of a noise token (link, tag, number) after each word
        #[arg(long)]
        noise_rate: f64,
        #[arg(long)]
        manifest: PathBuf,
    }
}

/// Reads a config file into a TOML table.
pub fn load_config(path: &Path) -> CliResult<toml::Table> {
    let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
    let table: toml::Table = text
        .parse()
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let known = |key: &str| {
        [
            CleanSettings::KEYS,
            TrainSettings::KEYS,
            PredictSettings::KEYS,
            EvalSettings::KEYS,
            StatsSettings::KEYS,
            SynthSettings::KEYS,
        ]
        .iter()
        .any(|keys| keys.contains(&key))
    };
    for (key, value) in &table {
        let ok = if value.is_table() { COMMANDS.contains(&key.as_str()) } else { known(key) };
        if !ok {
            return Err(CliError::Usage(format!("{}: unknown config key `{key}`", path.display())));
        }
    }
    Ok(table)
}

/// The slice of `config` that applies to `command`.
pub fn from_config<S: Settings>(config: &toml::Table, command: &str) -> CliResult<S> {
    let mut merged = toml::Table::new();
    for (key, value) in config {
        if !value.is_table() && S::KEYS.contains(&key.as_str()) {
            merged.insert(key.clone(), value.clone());
        }
    }
    if let Some(toml::Value::Table(section)) = config.get(command) {
        merged.extend(section.clone());
    }
    S::deserialize(merged).map_err(|e| CliError::Usage(format!("config [{command}]: {e}")))
}

/// Flags over config file over defaults.
pub fn resolve<S: Settings>(flags: S, config: Option<&toml::Table>, command: &str) -> CliResult<S> {
    match config {
        Some(table) => Ok(flags.overlay(from_config(table, command)?)),
        None => Ok(flags),
    }
}

/// Accepts `0.95` or `95` for the same split.
pub fn train_fraction(value: f64) -> CliResult<f64> {
    let f = if value > 1.0 { value / 100.0 } else { value };
    if f > 0.0 && f < 1.0 {
        Ok(f)
    } else {
        Err(CliError::Usage(format!("split {value} is not a fraction in (0, 1) or a percent in (1, 100)")))
    }
}

pub fn required<T>(value: Option<T>, name: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Usage(format!("missing --{} (or `{}` in the config file)", name.replace('_', "-"), name)))
}
