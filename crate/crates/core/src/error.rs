use std::io;

use thiserror::Error;

use crate::reaction::Schema;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the library.
///
/// Row-level ingestion problems are not errors in this sense; they are
/// collected as [`crate::corpus::RowError`] values while the stream continues.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unreadable source: {0}")]
    UnreadableSource(#[source] io::Error),

    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),

    #[error("lexicon schema mismatch: expected {expected}, artifact holds {found}")]
    LexiconSchemaMismatch { expected: Schema, found: Schema },

    #[error("unsupported artifact version: {0}")]
    VersionMismatch(String),

    #[error("corrupt artifact: {0}")]
    CorruptArtifact(String),

    #[error("reaction total is zero for schema {0}")]
    ZeroReactionTotal(Schema),

    #[error("lexicon was built from an empty training set")]
    EmptyTrainingSet,

    #[error("vector dimension {found} does not match schema {schema} (dimension {expected})")]
    DimensionMismatch {
        schema: Schema,
        expected: usize,
        found: usize,
    },

    #[error("split leaves the {0} side empty")]
    EmptySide(&'static str),

    #[error("degenerate range: all aggregate sentiment values equal {0}")]
    DegenerateRange(f64),

    #[error("sigma must be positive, got {0}")]
    NonPositiveSigma(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    /// True for errors caused by degenerate data rather than bad input or I/O.
    pub fn is_degenerate_data(&self) -> bool {
        matches!(
            self,
            Error::ZeroReactionTotal(_)
                | Error::EmptyTrainingSet
                | Error::EmptySide(_)
                | Error::DegenerateRange(_)
        )
    }

    /// True for errors about the shape or integrity of an input.
    pub fn is_schema(&self) -> bool {
        matches!(
            self,
            Error::SchemaMismatch(_)
                | Error::LexiconSchemaMismatch { .. }
                | Error::VersionMismatch(_)
                | Error::CorruptArtifact(_)
                | Error::DimensionMismatch { .. }
        )
    }
}
