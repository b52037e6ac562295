//! Run manifests: the resolved job plus timestamps and output paths.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::config::SeedSource;
use crate::job::Job;
use crate::{ARTIFACT_VERSION, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub command: String,
    pub artifact_version: String,
    pub seed: Option<u64>,
    pub seed_source: Option<SeedSource>,
    /// Fully resolved parameters; feeding them back reproduces the run.
    pub config: Job,
    pub started: String,
    pub finished: String,
    pub outputs: Vec<PathBuf>,
    pub passed: bool,
    /// Small command-specific results worth archiving (e.g. dominance fractions).
    pub notes: serde_json::Value,
}

impl RunManifest {
    pub fn new(job: &Job, seed_source: Option<SeedSource>) -> Self {
        RunManifest {
            schema_version: SCHEMA_VERSION,
            command: job.command().to_owned(),
            artifact_version: ARTIFACT_VERSION.to_owned(),
            seed: job.seed(),
            seed_source,
            config: job.clone(),
            started: now(),
            finished: String::new(),
            outputs: vec![],
            passed: false,
            notes: serde_json::Value::Null,
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }
}

pub fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}
