use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// Passes bytes through while hashing them.
pub struct HashingReader<R> {
    inner: R,
    hasher: Sha256,
    bytes: u64,
}

impl<R: Read> HashingReader<R> {
    pub fn new(inner: R) -> Self {
        HashingReader { inner, hasher: Sha256::new(), bytes: 0 }
    }

    /// Reads whatever is left so the digest covers the whole input.
    pub fn finish(mut self) -> io::Result<(String, u64)> {
        io::copy(&mut self, &mut io::sink())?;
        let digest = self.hasher.finalize();
        let hex = digest.iter().map(|b| format!("{b:02x}")).collect();
        Ok((hex, self.bytes))
    }
}

impl<R: Read> Read for HashingReader<R> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let n = self.inner.read(buf)?;
        self.hasher.update(&buf[..n]);
        self.bytes += n as u64;
        Ok(n)
    }
}

pub fn is_stdio(path: &Path) -> bool {
    path.as_os_str() == "-"
}

/// Opens a file, or stdin for `-`.
pub fn open_input(path: &Path) -> CliResult<Box<dyn Read>> {
    if is_stdio(path) {
        return Ok(Box::new(io::stdin().lock()));
    }
    let file = File::open(path).map_err(CliError::io(path))?;
    Ok(Box::new(BufReader::with_capacity(1 << 16, file)))
}

/// Runs `write` against `path`, or stdout when `path` is `None` or `-`.
///
/// File output goes to a temporary file in the same directory and is only
/// renamed into place once `write` succeeds, so a failed run leaves nothing
/// behind.
pub fn write_output<F>(path: Option<&Path>, write: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> CliResult<()>,
{
    match path {
        Some(path) if !is_stdio(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
                _ => PathBuf::from("."),
            };
            let tmp = tempfile::NamedTempFile::new_in(&dir).map_err(CliError::io(&dir))?;
            let mut sink = BufWriter::with_capacity(1 << 16, tmp);
            write(&mut sink)?;
            let tmp = sink.into_inner().map_err(|e| CliError::io(path)(e.into_error()))?;
            tmp.persist(path).map_err(|e| CliError::io(path)(e.error))?;
            Ok(())
        }
        _ => {
            let stdout = io::stdout();
            let mut sink = BufWriter::new(stdout.lock());
            write(&mut sink)?;
            sink.flush().map_err(CliError::io("<stdout>"))
        }
    }
}
