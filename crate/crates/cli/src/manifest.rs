//! Run manifests: one JSON object per line, appended after every run.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use zlab_core::PrecisionConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub path: String,
    pub sha256: String,
    pub rows: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub config: PrecisionConfig,
    pub jobs: usize,
    /// Substitution constants and their normalizations, by name.
    pub constants: BTreeMap<String, f64>,
    pub cbar_keys: Vec<String>,
    pub started_unix: u64,
    pub wall_clock_s: f64,
    pub status: String,
    pub outputs: Vec<OutputRecord>,
}

impl RunManifest {
    pub fn append(&self, path: &Path) -> std::io::Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut f = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
        let line = serde_json::to_string(self).map_err(std::io::Error::other)?;
        writeln!(f, "{line}")
    }
}

/// Reads a PrecisionConfig from JSON: either the config object itself or a
/// manifest record carrying it under `config`.
pub fn load_config(path: &Path) -> Result<PrecisionConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    // a manifest file may hold many records; the last one wins
    let last = text.lines().rev().find(|l| !l.trim().is_empty()).unwrap_or("");
    let value: serde_json::Value = serde_json::from_str(&text)
        .or_else(|_| serde_json::from_str(last))
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let cfg = value.get("config").cloned().unwrap_or(value);
    serde_json::from_value(cfg).map_err(|e| format!("{}: {e}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(status: &str) -> RunManifest {
        RunManifest {
            command: vec!["zlab".into(), "theta".into()],
            config: PrecisionConfig::default(),
            jobs: 1,
            constants: BTreeMap::new(),
            cbar_keys: vec![],
            started_unix: 0,
            wall_clock_s: 0.0,
            status: status.into(),
            outputs: vec![],
        }
    }

    #[test]
    fn appends_one_line_per_run() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.jsonl");
        record("ok").append(&p).unwrap();
        record("fail").append(&p).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text.lines().count(), 2);
        let second: RunManifest = serde_json::from_str(text.lines().nth(1).unwrap()).unwrap();
        assert_eq!(second.status, "fail");
    }

    #[test]
    fn config_from_plain_json_or_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let plain = dir.path().join("cfg.json");
        std::fs::write(&plain, r#"{"abs_tol": 1e-9}"#).unwrap();
        let cfg = load_config(&plain).unwrap();
        assert_eq!(cfg.abs_tol, 1e-9);
        assert_eq!(cfg.quad_step_cap, PrecisionConfig::default().quad_step_cap);

        let m = dir.path().join("m.jsonl");
        let mut r = record("ok");
        r.config.quad_step_cap = 0.05;
        r.append(&m).unwrap();
        r.append(&m).unwrap();
        assert_eq!(load_config(&m).unwrap().quad_step_cap, 0.05);
    }
}
