//! Lexicon persistence.
//!
//! Text format, one header line followed by one line per word:
//!
//! ```text
//! #reaction-lexicon v1<TAB>schema=core<TAB>components=love,wow,haha,sad,angry<TAB>entries=3<TAB>train_entries=2<TAB>mean=...<TAB>sha256=...
//! word<TAB>count<TAB>v1<TAB>...<TAB>vN
//! ```
//!
//! Values are written with 17 significant digits so loading reproduces every
//! `f64` bit for bit. Words are sorted by byte order. The checksum covers the
//! header (up to the checksum field) and every following byte.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use sha2::{Digest, Sha256};

use crate::engine::Lexicon;
use crate::error::{Error, Result};
use crate::reaction::Schema;

pub const MAGIC: &str = "#reaction-lexicon";
pub const VERSION: &str = "v1";

const RESERVED: [&str; 6] = ["schema", "components", "entries", "train_entries", "mean", "sha256"];

fn fmt_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes a lexicon. `extra` adds `key=value` header fields (for example the
/// manifest that produced the artifact).
pub fn save_lexicon<W: Write>(lexicon: &Lexicon, mut sink: W, extra: &[(&str, &str)]) -> Result<()> {
    let schema = lexicon.schema();
    let mut header = format!(
        "{MAGIC} {VERSION}\tschema={}\tcomponents={}\tentries={}\ttrain_entries={}\tmean=",
        schema.name(),
        schema.component_names().join(","),
        lexicon.len(),
        lexicon.train_entries()
    );
    match lexicon.train_mean() {
        Some(mean) => header.push_str(&mean.iter().map(|&v| fmt_value(v)).collect::<Vec<_>>().join(",")),
        None => header.push_str("none"),
    }
    for (key, value) in extra {
        if RESERVED.contains(key) || key.contains(['\t', '\n', '=']) || value.contains(['\t', '\n']) {
            return Err(Error::InvalidConfig(format!("bad lexicon header field `{key}`")));
        }
        header.push_str(&format!("\t{key}={value}"));
    }

    let mut words: Vec<_> = lexicon.iter().collect();
    words.sort_unstable_by(|a, b| a.0.cmp(b.0));
    let mut body = String::new();
    for (word, count, vector) in words {
        if word.is_empty() || word.contains(['\t', '\n', '\r']) {
            return Err(Error::InvalidConfig(format!("word {word:?} cannot be stored")));
        }
        body.push_str(word);
        body.push('\t');
        body.push_str(&count.to_string());
        for &v in vector {
            body.push('\t');
            body.push_str(&fmt_value(v));
        }
        body.push('\n');
    }

    let digest = checksum(&header, body.as_bytes());
    sink.write_all(header.as_bytes())?;
    sink.write_all(format!("\tsha256={digest}\n").as_bytes())?;
    sink.write_all(body.as_bytes())?;
    sink.flush()?;
    Ok(())
}

fn checksum(header: &str, body: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(header.as_bytes());
    h.update(b"\n");
    h.update(body);
    hex(&h.finalize())
}

/// Reads a lexicon, failing if `expected` is given and differs from the
/// stored schema.
pub fn load_lexicon<R: Read>(source: R, expected: Option<Schema>) -> Result<Lexicon> {
    load_lexicon_with_fields(source, expected).map(|(lexicon, _)| lexicon)
}

/// Like [`load_lexicon`], also returning the non-reserved header fields.
pub fn load_lexicon_with_fields<R: Read>(
    mut source: R,
    expected: Option<Schema>,
) -> Result<(Lexicon, BTreeMap<String, String>)> {
    let mut bytes = Vec::new();
    source
        .read_to_end(&mut bytes)
        .map_err(Error::UnreadableSource)?;
    let text = String::from_utf8(bytes).map_err(|_| Error::CorruptArtifact("not UTF-8".into()))?;
    let (header, body) = text
        .split_once('\n')
        .ok_or_else(|| Error::CorruptArtifact("missing header line".into()))?;

    let rest = header
        .strip_prefix(MAGIC)
        .and_then(|r| r.strip_prefix(' '))
        .ok_or_else(|| Error::CorruptArtifact("not a reaction lexicon".into()))?;
    let version = rest.split('\t').next().unwrap_or_default();
    if version != VERSION {
        return Err(Error::VersionMismatch(format!(
            "artifact is `{version}`, this build reads `{VERSION}`"
        )));
    }

    let (signed, digest) = header
        .rsplit_once("\tsha256=")
        .ok_or_else(|| Error::CorruptArtifact("missing checksum".into()))?;
    if checksum(signed, body.as_bytes()) != digest {
        return Err(Error::CorruptArtifact("checksum mismatch".into()));
    }

    let mut fields = BTreeMap::new();
    for field in signed.split('\t').skip(1) {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| Error::CorruptArtifact(format!("bad header field `{field}`")))?;
        fields.insert(k.to_owned(), v.to_owned());
    }
    let mut take = |key: &str| {
        fields
            .remove(key)
            .ok_or_else(|| Error::CorruptArtifact(format!("missing header field `{key}`")))
    };
    let schema: Schema = take("schema")?
        .parse()
        .map_err(|_| Error::CorruptArtifact("unknown schema".into()))?;
    if let Some(expected) = expected {
        if expected != schema {
            return Err(Error::LexiconSchemaMismatch {
                expected,
                found: schema,
            });
        }
    }
    if take("components")? != schema.component_names().join(",") {
        return Err(Error::CorruptArtifact("component order differs from schema".into()));
    }
    let entries: usize = parse(&take("entries")?)?;
    let train_entries: u64 = parse(&take("train_entries")?)?;
    let mean = match take("mean")?.as_str() {
        "none" => None,
        list => Some(list.split(',').map(parse).collect::<Result<Vec<f64>>>()?),
    };

    let dim = schema.dim();
    let mut rows = Vec::with_capacity(entries);
    for line in body.lines() {
        let mut parts = line.split('\t');
        let word = parts.next().unwrap_or_default().to_owned();
        let count: u64 = parse(parts.next().unwrap_or_default())?;
        let vector = parts.map(parse).collect::<Result<Vec<f64>>>()?;
        if vector.len() != dim {
            return Err(Error::CorruptArtifact(format!("word {word:?} has {} values", vector.len())));
        }
        rows.push((word, count, vector));
    }
    if rows.len() != entries {
        return Err(Error::CorruptArtifact(format!(
            "header announces {entries} entries, found {}",
            rows.len()
        )));
    }
    let lexicon = Lexicon::from_parts(schema, rows, mean, train_entries).map_err(|e| match e {
        Error::DimensionMismatch { .. } => Error::CorruptArtifact(e.to_string()),
        other => other,
    })?;
    Ok((lexicon, fields))
}

fn parse<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::CorruptArtifact(format!("cannot parse `{s}`")))
}
