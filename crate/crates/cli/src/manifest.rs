use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{io_err, CliError, Result};

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileRecord {
    /// Relative to the output directory.
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRecord {
    pub nx: usize,
    pub ny: usize,
    pub x0: f64,
    pub y0: f64,
    pub dx: f64,
    pub dy: f64,
}

/// Everything needed to trace an output directory back to its inputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    /// Hash of the normalized configuration and the `--heavy` flag.
    pub run_id: String,
    pub mode: String,
    pub config: serde_json::Value,
    pub constants: BTreeMap<String, f64>,
    pub conventions: BTreeMap<String, String>,
    pub grid: Option<GridRecord>,
    pub threads: usize,
    pub wall_clock_seconds: f64,
    pub steps: BTreeMap<String, u64>,
    pub summary: serde_json::Value,
    pub files: Vec<FileRecord>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn record_file(dir: &Path, name: &str) -> Result<FileRecord> {
    let path = dir.join(name);
    let bytes = fs::read(&path).map_err(io_err(&path))?;
    Ok(FileRecord {
        path: name.to_string(),
        sha256: sha256_hex(&bytes),
        bytes: bytes.len() as u64,
    })
}

/// Load `manifest.json` from `dir` and check every listed file against its
/// recorded size and checksum.
pub fn verify_manifest(dir: &Path) -> Result<RunManifest> {
    let path = dir.join(MANIFEST_NAME);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    let manifest: RunManifest = serde_json::from_str(&text).map_err(|e| CliError::Format {
        path: path.clone(),
        message: e.to_string(),
    })?;
    for f in &manifest.files {
        let now = record_file(dir, &f.path)?;
        if now != *f {
            return Err(CliError::Format {
                path: dir.join(&f.path),
                message: "contents do not match the manifest checksum".into(),
            });
        }
    }
    Ok(manifest)
}
