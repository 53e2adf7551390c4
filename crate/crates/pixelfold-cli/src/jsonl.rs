use anyhow::{Context, Result};
use pixelfold::PathRecord;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

/// Line-oriented writer over a file or stdout.
pub enum LineWriter {
    File(BufWriter<File>),
    Stdout(std::io::Stdout),
}

impl LineWriter {
    pub fn create(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => {
                let file =
                    File::create(p).with_context(|| format!("creating {}", p.display()))?;
                Ok(LineWriter::File(BufWriter::new(file)))
            }
            None => Ok(LineWriter::Stdout(std::io::stdout())),
        }
    }

    pub fn write_json<T: Serialize>(&mut self, value: &T) -> Result<()> {
        let line = serde_json::to_string(value)?;
        match self {
            LineWriter::File(w) => writeln!(w, "{line}")?,
            LineWriter::Stdout(w) => writeln!(w, "{line}")?,
        }
        Ok(())
    }

    pub fn finish(&mut self) -> Result<()> {
        match self {
            LineWriter::File(w) => w.flush()?,
            LineWriter::Stdout(w) => w.flush()?,
        }
        Ok(())
    }
}

/// Parse a JSON Lines dataset, reporting the offending line on failure.
pub fn read_records(path: &Path) -> Result<Vec<PathRecord>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let reader = BufReader::new(file);
    let mut records = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: PathRecord = serde_json::from_str(&line)
            .with_context(|| format!("{}:{}: malformed record", path.display(), lineno + 1))?;
        records.push(record);
    }
    Ok(records)
}

/// SHA-256 of the file contents plus its line count.
pub fn digest_file(path: &Path) -> Result<(String, u64)> {
    let data = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let digest = Sha256::digest(&data);
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    let lines = data.iter().filter(|&&b| b == b'\n').count() as u64;
    Ok((hex, lines))
}
