use std::io::Write;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::manifest::OutputRecord;

/// A CSV table held in memory until the run succeeds, so a failed run
/// never leaves a partial file behind.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Table {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn to_bytes(&self) -> Result<Vec<u8>, csv::Error> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().map_err(|e| e.into_error().into())
    }

    /// Writes to `path`, or to stdout when there is none. Files get a digest
    /// record for the manifest.
    pub fn emit(&self, path: Option<&Path>) -> std::io::Result<Option<OutputRecord>> {
        let bytes = self.to_bytes().map_err(std::io::Error::other)?;
        match path {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir)?;
                }
                std::fs::write(p, &bytes)?;
                Ok(Some(OutputRecord {
                    path: p.display().to_string(),
                    sha256: hex::encode(Sha256::digest(&bytes)),
                    rows: self.rows.len(),
                }))
            }
            None => {
                std::io::stdout().lock().write_all(&bytes)?;
                Ok(None)
            }
        }
    }
}
