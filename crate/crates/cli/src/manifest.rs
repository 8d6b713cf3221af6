use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use chrono::{SecondsFormat, Utc};
use reaction_lens::RowError;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::io::{is_stdio, write_output};

const MAX_ROW_ERRORS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowIssue {
    pub line: u64,
    pub reason: String,
}

/// What a command was run with and what it did, written next to its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<String>,
    pub started_at: String,
    pub finished_at: String,
    /// Rows dropped, keyed by reason.
    pub drops: BTreeMap<String, u64>,
    /// Rows kept but flagged, e.g. rows a model will later exclude.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flagged: BTreeMap<String, u64>,
    /// The first malformed rows, for diagnosis.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub row_errors: Vec<RowIssue>,
}

fn now() -> String {
    Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true)
}

impl RunManifest {
    pub fn start<S: Serialize>(command: &str, config: &S) -> CliResult<Self> {
        Ok(RunManifest {
            tool: env!("CARGO_PKG_NAME").to_owned(),
            version: env!("CARGO_PKG_VERSION").to_owned(),
            command: command.to_owned(),
            config: serde_json::to_value(config)?,
            inputs: Vec::new(),
            outputs: Vec::new(),
            started_at: now(),
            finished_at: String::new(),
            drops: BTreeMap::new(),
            flagged: BTreeMap::new(),
            row_errors: Vec::new(),
        })
    }

    pub fn input(&mut self, path: &Path, sha256: String, bytes: u64) {
        self.inputs.push(InputDigest { path: path.display().to_string(), sha256, bytes });
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    pub fn drop_count(&mut self, reason: &str, count: u64) {
        *self.drops.entry(reason.to_owned()).or_default() += count;
    }

    pub fn flag_count(&mut self, reason: &str, count: u64) {
        *self.flagged.entry(reason.to_owned()).or_default() += count;
    }

    pub fn row_errors(&mut self, errors: &[RowError]) {
        self.drop_count("malformed_row", errors.len() as u64);
        let room = MAX_ROW_ERRORS.saturating_sub(self.row_errors.len());
        self.row_errors
            .extend(errors.iter().take(room).map(|e| RowIssue { line: e.line, reason: e.reason.clone() }));
    }

    /// Stamps the finish time and writes the manifest, if it has a home.
    pub fn finish(mut self, path: Option<&Path>) -> CliResult<()> {
        self.finished_at = now();
        let Some(path) = path else { return Ok(()) };
        write_output(Some(path), |w| {
            serde_json::to_writer_pretty(&mut *w, &self)?;
            writeln!(w).map_err(CliError::io(path))
        })
    }
}

/// The explicit manifest path, else `<output>.manifest.json` beside a file
/// output. Output to stdout without `--manifest` gets no manifest.
pub fn manifest_path(explicit: Option<&Path>, output: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = explicit {
        return Some(p.to_path_buf());
    }
    let output = output.filter(|p| !is_stdio(p))?;
    let mut name = output.file_name()?.to_os_string();
    name.push(".manifest.json");
    Some(output.with_file_name(name))
}

/// The value artifacts store to point at their manifest: its file name,
/// which sits in the same directory as the artifact by default.
pub fn manifest_ref(manifest: Option<&Path>) -> Option<String> {
    manifest.map(|p| p.file_name().map(Path::new).unwrap_or(p).display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sidecar_naming() {
        assert_eq!(
            manifest_path(None, Some(Path::new("out/lex.tsv"))),
            Some(PathBuf::from("out/lex.tsv.manifest.json"))
        );
        assert_eq!(manifest_path(None, Some(Path::new("-"))), None);
        assert_eq!(manifest_path(None, None), None);
        assert_eq!(manifest_path(Some(Path::new("m.json")), None), Some(PathBuf::from("m.json")));
        assert_eq!(manifest_ref(Some(Path::new("a/b/m.json"))).as_deref(), Some("m.json"));
    }

    #[test]
    fn round_trips_through_json() {
        let mut m = RunManifest::start("clean", &serde_json::json!({"seed": 3})).unwrap();
        m.drop_count("empty_after_clean", 2);
        m.row_errors(&[RowError { line: 4, reason: "bad".into() }]);
        let text = serde_json::to_string(&m).unwrap();
        let back: RunManifest = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.drops["malformed_row"], 1);
    }
}
