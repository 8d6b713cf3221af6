//! The `reaction-lens` command line: corpus cleaning, lexicon training and
//! prediction, experiments, corpus statistics and synthetic corpora.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod manifest;
pub mod synth;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::config::{
    load_config, resolve, CleanSettings, EvalSettings, PredictSettings, StatsSettings, SynthSettings,
    TrainSettings, CONFIG_ENV,
};
use crate::error::CliResult;

#[derive(Debug, Parser)]
#[command(name = "reaction-lens", version, about = "Predict reaction distributions from post text")]
pub struct Cli {
    /// TOML file whose keys mirror the flags; flags win
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Clean message text and drop rows left without words
    Clean(CleanSettings),
    /// Build a word lexicon from a cleaned corpus
    Train(TrainSettings),
    /// Predict reaction vectors for messages, one per line
    Predict(PredictSettings),
    /// Run repeated train/test experiments and report metrics
    Eval(EvalSettings),
    /// Reaction totals and shares of a corpus
    Stats(StatsSettings),
    /// Generate a synthetic corpus with known word affinities
    Synth(SynthSettings),
}

pub fn run(cli: Cli) -> CliResult<()> {
    let config = cli.config.as_deref().map(load_config).transpose()?;
    let config = config.as_ref();
    match cli.command {
        Command::Clean(s) => commands::clean(resolve(s, config, "clean")?),
        Command::Train(s) => commands::train(resolve(s, config, "train")?),
        Command::Predict(s) => commands::predict(resolve(s, config, "predict")?),
        Command::Eval(s) => commands::eval(resolve(s, config, "eval")?),
        Command::Stats(s) => commands::stats(resolve(s, config, "stats")?),
        Command::Synth(s) => commands::synth(resolve(s, config, "synth")?),
    }
}
