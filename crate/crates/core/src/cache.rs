//! JSON file of fitted constants, keyed "cbar/l=<l>/T=<T>/H=<H>".

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use crate::error::Result;
use crate::moments::CbarEstimate;

pub const CACHE_DIR_ENV: &str = "ZLAB_CACHE_DIR";
pub const CACHE_FILE: &str = "constants.json";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub cbar: f64,
    pub spread: f64,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConstantsCache {
    path: PathBuf,
    entries: BTreeMap<String, CacheEntry>,
}

impl ConstantsCache {
    /// Opens (or starts) the cache file inside `dir`.
    pub fn open(dir: impl AsRef<Path>) -> Result<ConstantsCache> {
        let path = dir.as_ref().join(CACHE_FILE);
        let entries = match std::fs::read_to_string(&path) {
            Ok(text) => serde_json::from_str(&text)?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(e.into()),
        };
        Ok(ConstantsCache { path, entries })
    }

    /// The directory named by `ZLAB_CACHE_DIR`, or `.zlab-cache` in the
    /// working directory.
    pub fn default_dir() -> PathBuf {
        std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".zlab-cache"))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, key: &str) -> Option<&CacheEntry> {
        self.entries.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// Records an estimate and rewrites the file.
    pub fn put_cbar(&mut self, est: &CbarEstimate) -> Result<()> {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        self.entries.insert(est.cache_key(), CacheEntry { cbar: est.cbar, spread: est.spread, timestamp });
        self.save()
    }

    fn save(&self) -> Result<()> {
        if let Some(dir) = self.path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let tmp = self.path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_string_pretty(&self.entries)? + "\n")?;
        std::fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}
