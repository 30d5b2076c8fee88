//! Run manifests: every file-writing command drops one next to its outputs
//! so a run can be audited and replayed. Data files carry no timestamps;
//! the manifest does.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use crate::output::{atomic_write, read_file, sha256_hex, CliError};

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub argv: Vec<String>,
    pub timestamp_unix: u64,
    pub inputs: Vec<InputDigest>,
    pub parameters: Value,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &'static str, argv: &[String], parameters: Value) -> Self {
        let timestamp_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunManifest {
            tool: "citent",
            version: env!("CARGO_PKG_VERSION"),
            command,
            argv: argv.to_vec(),
            timestamp_unix,
            inputs: Vec::new(),
            parameters,
            outputs: Vec::new(),
        }
    }

    pub fn record_input(&mut self, path: &Path) -> Result<String, CliError> {
        let contents = read_file(path)?;
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: sha256_hex(&contents),
        });
        Ok(contents)
    }

    pub fn write_output(&mut self, path: &Path, contents: &str) -> Result<(), CliError> {
        atomic_write(path, contents)?;
        self.outputs.push(path.display().to_string());
        Ok(())
    }

    pub fn store(&self, out_dir: &Path, stem: &str) -> Result<PathBuf, CliError> {
        let path = out_dir.join(format!("{stem}_manifest.json"));
        let mut body = serde_json::to_string_pretty(self).expect("manifest serializes");
        body.push('\n');
        atomic_write(&path, &body)?;
        Ok(path)
    }
}
