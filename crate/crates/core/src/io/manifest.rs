//! Run manifests: what produced a report, with content hashes of inputs.
//!
//! No timestamps or host data, so re-running a manifest's command yields
//! byte-identical output in exact modes and in stochastic modes with the
//! recorded seed.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<InputRecord>,
    /// Grids, radii, seeds and tolerances, keyed by flag name.
    pub parameters: BTreeMap<String, Value>,
    pub tool_version: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            inputs: Vec::new(),
            parameters: BTreeMap::new(),
            tool_version: TOOL_VERSION.into(),
        }
    }

    pub fn input(mut self, path: &Path, contents: &[u8]) -> Self {
        self.inputs.push(InputRecord {
            path: path.display().to_string(),
            sha256: sha256_hex(contents),
        });
        self
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters
            .insert(key.into(), serde_json::to_value(value).expect("parameter serializes"));
        self
    }

    /// Inputs whose current contents no longer match the recorded hash.
    pub fn stale_inputs(&self) -> Vec<String> {
        self.inputs
            .iter()
            .filter(|r| std::fs::read(&r.path).map(|b| sha256_hex(&b)).ok().as_deref() != Some(r.sha256.as_str()))
            .map(|r| r.path.clone())
            .collect()
    }
}

/// A report together with the manifest that produced it.
#[derive(Clone, Debug, Serialize)]
pub struct Report<'a, T: Serialize> {
    pub manifest: &'a RunManifest,
    pub report: &'a T,
}

/// One tower level as written by `tower build`; paths relative to the
/// manifest's directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerManifestLevel {
    pub degree: usize,
    pub normal: bool,
    pub connected: bool,
    pub complex: String,
    pub rep: String,
    pub rep_sha256: String,
}

/// `tower.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TowerManifest {
    pub base: String,
    pub base_sha256: String,
    pub family: String,
    pub trivial_intersection: bool,
    pub nested: bool,
    pub degrees: Vec<usize>,
    pub levels: Vec<TowerManifestLevel>,
    pub manifest: RunManifest,
}
