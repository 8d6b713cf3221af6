//! Streaming corpus ingestion and accounting.
//!
//! [`load_corpus`] reads CSV (RFC 4180, header row required) or JSON lines
//! one record at a time. Rows that cannot be decoded are recorded in the
//! reader's error ledger with their line number and skipped; only failures
//! of the underlying source end the stream.

use std::borrow::Borrow;
use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::reaction::{Reaction, ReactionCounts};

/// One post: its message and the reactions it received.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PostRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub message: String,
    pub reactions: ReactionCounts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    Csv,
    Jsonl,
}

impl CorpusFormat {
    /// Guesses the format from a file extension, defaulting to CSV.
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("ndjson") | Some("json") => CorpusFormat::Jsonl,
            _ => CorpusFormat::Csv,
        }
    }
}

impl FromStr for CorpusFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(CorpusFormat::Csv),
            "jsonl" => Ok(CorpusFormat::Jsonl),
            other => Err(Error::InvalidConfig(format!("unknown corpus format `{other}`"))),
        }
    }
}

impl fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusFormat::Csv => "csv",
            CorpusFormat::Jsonl => "jsonl",
        })
    }
}

/// Names of the source columns (or JSON keys) holding each field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnMap {
    pub message: String,
    /// One column per reaction, in [`Reaction::ALL`] order.
    pub reactions: [String; 7],
    pub id: Option<String>,
}

impl Default for ColumnMap {
    fn default() -> Self {
        ColumnMap {
            message: "message".into(),
            reactions: Reaction::ALL.map(|r| r.name().to_owned()),
            id: None,
        }
    }
}

impl ColumnMap {
    pub fn column(&self, reaction: Reaction) -> &str {
        &self.reactions[reaction as usize]
    }

    /// Applies `field=column` overrides, e.g. `message=text,like=likes,id=post_id`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for pair in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (field, column) = pair.split_once('=').ok_or_else(|| {
                Error::InvalidConfig(format!("column override `{pair}` is not field=column"))
            })?;
            let column = column.trim().to_owned();
            match field.trim() {
                "message" => self.message = column,
                "id" => self.id = Some(column),
                other => {
                    let reaction: Reaction = other.parse()?;
                    self.reactions[reaction as usize] = column;
                }
            }
        }
        Ok(self)
    }
}

/// A row that was skipped, with the 1-based line it started on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowError {
    pub line: u64,
    pub reason: String,
}

impl fmt::Display for RowError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

struct CsvColumns {
    message: usize,
    reactions: [usize; 7],
    id: Option<usize>,
}

enum Source<R: Read> {
    Csv {
        reader: csv::Reader<R>,
        columns: CsvColumns,
        record: csv::ByteRecord,
    },
    Jsonl {
        reader: BufReader<R>,
        map: ColumnMap,
        buf: Vec<u8>,
        line: u64,
    },
}

/// Lazy record stream returned by [`load_corpus`].
pub struct CorpusReader<R: Read> {
    source: Source<R>,
    ledger: Vec<RowError>,
    done: bool,
}

/// Opens a record stream over `source`.
///
/// For CSV the header is read immediately, so a missing column fails here
/// with [`Error::SchemaMismatch`].
pub fn load_corpus<R: Read>(source: R, format: CorpusFormat, map: &ColumnMap) -> Result<CorpusReader<R>> {
    let source = match format {
        CorpusFormat::Csv => {
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(true)
                .flexible(true)
                .from_reader(source);
            let headers = match reader.byte_headers() {
                Ok(h) => h.clone(),
                Err(e) => return Err(csv_fatal(e)),
            };
            let columns = resolve_columns(&headers, map)?;
            Source::Csv {
                reader,
                columns,
                record: csv::ByteRecord::new(),
            }
        }
        CorpusFormat::Jsonl => Source::Jsonl {
            reader: BufReader::new(source),
            map: map.clone(),
            buf: Vec::new(),
            line: 0,
        },
    };
    Ok(CorpusReader {
        source,
        ledger: Vec::new(),
        done: false,
    })
}

fn csv_fatal(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::UnreadableSource(io),
        other => Error::SchemaMismatch(format!("{other:?}")),
    }
}

fn resolve_columns(headers: &csv::ByteRecord, map: &ColumnMap) -> Result<CsvColumns> {
    if headers.is_empty() {
        return Err(Error::SchemaMismatch("missing header row".into()));
    }
    let find = |name: &str| -> Result<usize> {
        headers
            .iter()
            .position(|h| h == name.as_bytes())
            .ok_or_else(|| Error::SchemaMismatch(format!("missing column `{name}`")))
    };
    let mut reactions = [0; 7];
    for (slot, column) in reactions.iter_mut().zip(&map.reactions) {
        *slot = find(column)?;
    }
    Ok(CsvColumns {
        message: find(&map.message)?,
        reactions,
        id: map.id.as_deref().map(find).transpose()?,
    })
}

fn parse_count(raw: &str) -> std::result::Result<u64, String> {
    raw.trim()
        .parse::<u64>()
        .map_err(|_| format!("count {raw:?} is not a non-negative integer"))
}

fn csv_row(record: &csv::ByteRecord, columns: &CsvColumns) -> std::result::Result<PostRecord, String> {
    let field = |i: usize| -> std::result::Result<&str, String> {
        let bytes = record
            .get(i)
            .ok_or_else(|| format!("row has {} fields, column {} missing", record.len(), i + 1))?;
        std::str::from_utf8(bytes).map_err(|_| format!("field {} is not valid UTF-8", i + 1))
    };
    let mut reactions = ReactionCounts::default();
    for (reaction, &i) in Reaction::ALL.into_iter().zip(&columns.reactions) {
        reactions.set(reaction, parse_count(field(i)?)?);
    }
    Ok(PostRecord {
        id: columns.id.map(field).transpose()?.map(str::to_owned),
        message: field(columns.message)?.to_owned(),
        reactions,
    })
}

fn json_row(bytes: &[u8], map: &ColumnMap) -> std::result::Result<PostRecord, String> {
    let text = std::str::from_utf8(bytes).map_err(|_| "line is not valid UTF-8".to_owned())?;
    let object: Map<String, Value> =
        serde_json::from_str(text).map_err(|e| format!("invalid JSON object: {e}"))?;
    let message = match object.get(&map.message) {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Null) => String::new(),
        Some(_) => return Err(format!("`{}` is not a string", map.message)),
        None => return Err(format!("missing key `{}`", map.message)),
    };
    let mut reactions = ReactionCounts::default();
    for reaction in Reaction::ALL {
        let key = map.column(reaction);
        let count = match object.get(key) {
            Some(Value::Number(n)) => n
                .as_u64()
                .ok_or_else(|| format!("count {n} for `{key}` is not a non-negative integer"))?,
            Some(Value::String(s)) => parse_count(s)?,
            Some(other) => return Err(format!("count {other} for `{key}` is not an integer")),
            None => return Err(format!("missing key `{key}`")),
        };
        reactions.set(reaction, count);
    }
    let id = match map.id.as_ref().and_then(|k| object.get(k)) {
        Some(Value::String(s)) => Some(s.clone()),
        Some(Value::Null) | None => None,
        Some(other) => Some(other.to_string()),
    };
    Ok(PostRecord {
        id,
        message,
        reactions,
    })
}

impl<R: Read> CorpusReader<R> {
    /// Rows skipped so far.
    pub fn ledger(&self) -> &[RowError] {
        &self.ledger
    }

    pub fn into_ledger(self) -> Vec<RowError> {
        self.ledger
    }
}

impl<R: Read> Iterator for CorpusReader<R> {
    type Item = Result<PostRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            match &mut self.source {
                Source::Csv {
                    reader,
                    columns,
                    record,
                } => match reader.read_byte_record(record) {
                    Ok(false) => break,
                    Ok(true) => {
                        let line = record.position().map_or(0, |p| p.line());
                        match csv_row(record, columns) {
                            Ok(post) => return Some(Ok(post)),
                            Err(reason) => self.ledger.push(RowError { line, reason }),
                        }
                    }
                    Err(e) => {
                        let line = e.position().map_or(0, |p| p.line());
                        match e.into_kind() {
                            csv::ErrorKind::Io(io) => {
                                self.done = true;
                                return Some(Err(Error::UnreadableSource(io)));
                            }
                            other => self.ledger.push(RowError {
                                line,
                                reason: format!("{other:?}"),
                            }),
                        }
                    }
                },
                Source::Jsonl {
                    reader,
                    map,
                    buf,
                    line,
                } => {
                    buf.clear();
                    match reader.read_until(b'\n', buf) {
                        Ok(0) => break,
                        Ok(_) => {
                            *line += 1;
                            let trimmed = buf.trim_ascii();
                            if trimmed.is_empty() {
                                continue;
                            }
                            match json_row(trimmed, map) {
                                Ok(post) => return Some(Ok(post)),
                                Err(reason) => self.ledger.push(RowError { line: *line, reason }),
                            }
                        }
                        Err(e) => {
                            self.done = true;
                            return Some(Err(Error::UnreadableSource(e)));
                        }
                    }
                }
            }
        }
        self.done = true;
        None
    }
}

/// Writes records with the default column names.
pub struct CorpusWriter<W: Write> {
    inner: WriterInner<W>,
    with_id: bool,
}

enum WriterInner<W: Write> {
    Csv(Box<csv::Writer<W>>),
    Jsonl(W),
}

impl<W: Write> CorpusWriter<W> {
    pub fn new(sink: W, format: CorpusFormat, with_id: bool) -> Result<Self> {
        let inner = match format {
            CorpusFormat::Csv => {
                let mut w = csv::Writer::from_writer(sink);
                let mut header: Vec<&str> = Vec::with_capacity(9);
                if with_id {
                    header.push("id");
                }
                header.push("message");
                header.extend(Reaction::ALL.iter().map(|r| r.name()));
                w.write_record(&header).map_err(csv_write_error)?;
                WriterInner::Csv(Box::new(w))
            }
            CorpusFormat::Jsonl => WriterInner::Jsonl(sink),
        };
        Ok(CorpusWriter { inner, with_id })
    }

    pub fn write(&mut self, record: &PostRecord) -> Result<()> {
        let counts = record.reactions.as_array();
        match &mut self.inner {
            WriterInner::Csv(w) => {
                if self.with_id {
                    w.write_field(record.id.as_deref().unwrap_or(""))
                        .map_err(csv_write_error)?;
                }
                w.write_field(&record.message).map_err(csv_write_error)?;
                for c in counts {
                    w.write_field(c.to_string()).map_err(csv_write_error)?;
                }
                w.write_record(None::<&[u8]>).map_err(csv_write_error)?;
            }
            WriterInner::Jsonl(w) => {
                let mut object = Map::new();
                if self.with_id {
                    if let Some(id) = &record.id {
                        object.insert("id".into(), Value::String(id.clone()));
                    }
                }
                object.insert("message".into(), Value::String(record.message.clone()));
                for (reaction, c) in Reaction::ALL.iter().zip(counts) {
                    object.insert(reaction.name().into(), Value::from(c));
                }
                serde_json::to_writer(&mut *w, &object).map_err(|e| Error::Io(e.into()))?;
                w.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Result<W> {
        match self.inner {
            WriterInner::Csv(w) => w
                .into_inner()
                .map_err(|e| Error::Io(std::io::Error::other(e.to_string()))),
            WriterInner::Jsonl(mut w) => {
                w.flush()?;
                Ok(w)
            }
        }
    }
}

fn csv_write_error(e: csv::Error) -> Error {
    Error::Io(e.into())
}

/// Reaction totals and shares over a corpus.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub rows: u64,
    pub totals: ReactionCounts,
    /// Share of each reaction among all seven, in percent; absent when no
    /// reactions were counted.
    pub all_percent: Option<Vec<f64>>,
    /// Share among the five core reactions, in percent.
    pub core_percent: Option<Vec<f64>>,
}

impl CorpusStats {
    pub fn from_totals(rows: u64, totals: ReactionCounts) -> Self {
        let shares = |reactions: &[Reaction]| -> Option<Vec<f64>> {
            let sum: u128 = reactions.iter().map(|&r| totals.get(r) as u128).sum();
            (sum > 0).then(|| {
                reactions
                    .iter()
                    .map(|&r| 100.0 * totals.get(r) as f64 / sum as f64)
                    .collect()
            })
        };
        CorpusStats {
            rows,
            totals,
            all_percent: shares(&Reaction::ALL),
            core_percent: shares(&Reaction::CORE),
        }
    }

    pub fn all_share(&self, reaction: Reaction) -> Option<f64> {
        let i = Reaction::ALL.iter().position(|&r| r == reaction)?;
        self.all_percent.as_ref().map(|p| p[i])
    }

    pub fn core_share(&self, reaction: Reaction) -> Option<f64> {
        let i = Reaction::CORE.iter().position(|&r| r == reaction)?;
        self.core_percent.as_ref().map(|p| p[i])
    }
}

/// Running totals; feed it counts one row at a time.
#[derive(Debug, Clone, Default)]
pub struct StatsAccumulator {
    rows: u64,
    totals: [u64; 7],
}

impl StatsAccumulator {
    pub fn add(&mut self, counts: &ReactionCounts) {
        self.rows += 1;
        for (t, c) in self.totals.iter_mut().zip(counts.as_array()) {
            *t = t.saturating_add(c);
        }
    }

    pub fn finish(&self) -> CorpusStats {
        CorpusStats::from_totals(self.rows, ReactionCounts::from_array(self.totals))
    }
}

pub fn corpus_stats<I>(corpus: I) -> CorpusStats
where
    I: IntoIterator,
    I::Item: Borrow<ReactionCounts>,
{
    let mut acc = StatsAccumulator::default();
    for counts in corpus {
        acc.add(counts.borrow());
    }
    acc.finish()
}
