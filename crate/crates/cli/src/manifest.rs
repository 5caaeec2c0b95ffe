//! Record of a run: the command line, resolved settings and content digests
//! of every file read or written. No timestamps, so reruns compare equal.

use std::collections::BTreeMap;
use std::path::Path;

use asymscat::SolverConfig;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Default, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub args: Vec<String>,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverSettings>,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
}

#[derive(Debug, Serialize)]
pub struct SolverSettings {
    pub n_grid: usize,
    pub quadrature: String,
    pub tolerance: f64,
    pub structured_local: bool,
}

impl From<&SolverConfig> for SolverSettings {
    fn from(c: &SolverConfig) -> Self {
        Self {
            n_grid: c.n_grid,
            quadrature: c.quadrature.to_string(),
            tolerance: c.tolerance,
            structured_local: c.structured_local,
        }
    }
}

impl RunManifest {
    pub fn new(command: &str, args: Vec<String>) -> Self {
        Self {
            command: command.to_string(),
            args,
            version: env!("CARGO_PKG_VERSION"),
            ..Self::default()
        }
    }

    pub fn input(&mut self, path: &Path) -> Result<(), CliError> {
        let digest = digest_file(path)?;
        self.inputs.insert(path.display().to_string(), digest);
        Ok(())
    }

    pub fn output(&mut self, name: &str, bytes: &[u8]) {
        self.outputs.insert(name.to_string(), digest(bytes));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn digest_file(path: &Path) -> Result<String, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(digest(&bytes))
}
