//! Reaction-distribution prediction for short social-media texts.
//!
//! Posts are cleaned into word sets, their reader reactions are normalized
//! into distributions, and a word lexicon of averaged distributions is used
//! to predict the reactions of unseen posts. Three models share that
//! machinery:
//!
//! - **core**: Love, Wow, Haha, Sad, Angry;
//! - **all**: the core set plus Like and Thankful;
//! - **star**: positive and negative mass plus a 1–5 star value.
//!
//! ```
//! use reaction_lens::{clean_message, CleanConfig, Lexicon, Schema};
//!
//! let cfg = CleanConfig::default();
//! let a = clean_message("good news @someone", &cfg);
//! let b = clean_message("sad news 2024", &cfg);
//! let love = [1.0, 0.0, 0.0, 0.0, 0.0];
//! let sad = [0.0, 0.0, 0.0, 1.0, 0.0];
//! let lexicon: Lexicon = Lexicon::build(
//!     Schema::Core,
//!     [(a.unique_words.iter(), &love[..]), (b.unique_words.iter(), &sad[..])],
//! )
//! .unwrap();
//! let p = lexicon.predict(["news"]).unwrap();
//! assert_eq!(p.vector.values(), &[0.5, 0.0, 0.0, 0.5, 0.0]);
//! ```

pub mod clean;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod eval;
pub mod lexicon_io;
pub mod reaction;
pub mod star;

pub use clean::{clean_message, is_eligible_word, CleanConfig, CleanSteps, CleanedMessage, Stopwords};
pub use corpus::{
    corpus_stats, load_corpus, ColumnMap, CorpusFormat, CorpusReader, CorpusStats, CorpusWriter, PostRecord,
    RowError, StatsAccumulator,
};
pub use engine::{normalize, Lexicon, LexiconBuilder, Prediction};
pub use error::{Error, Result};
pub use eval::{entry_metrics, run_experiment, split, Dataset, EntryMetrics, EvalReport, ExperimentConfig, MetricSet, ModelKind};
pub use lexicon_io::{load_lexicon, save_lexicon};
pub use reaction::{Reaction, ReactionCounts, ReactionVector, Schema};
pub use star::{
    build_star_vectors, discretize_star, gaussian_similarity, star_normalize, star_scale, Polarities, StarRange,
    StarSentiment,
};
