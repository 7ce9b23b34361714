use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// One produced file (or stdout when `path` is `None`).
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub path: Option<PathBuf>,
    pub bytes: Vec<u8>,
}

impl Artifact {
    pub fn new(path: Option<PathBuf>, bytes: Vec<u8>) -> Self {
        Artifact { path, bytes }
    }

    pub fn label(&self) -> String {
        self.path.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "-".into())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// File path as given on the command line; `-` for stdout.
    pub path: String,
    pub bytes: usize,
    pub sha256: String,
}

impl OutputRecord {
    pub fn of(a: &Artifact) -> Self {
        OutputRecord { path: a.label(), bytes: a.bytes.len(), sha256: sha256_hex(&a.bytes) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Arguments after the program name.
    pub argv: Vec<String>,
    /// Every parameter after defaults and environment were applied.
    pub params: serde_json::Value,
    pub tool_version: String,
    pub outputs: Vec<OutputRecord>,
    pub duration_s: f64,
}

impl RunManifest {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Manifest(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

/// `<file>.manifest.json`.
pub fn manifest_path_for(path: &Path) -> PathBuf {
    let mut name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    path.with_file_name(name)
}
