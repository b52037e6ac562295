//! Flag, environment and config-file resolution.

use std::fmt;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use schwinger_core::sampling::Ensemble;

/// Environment variable consulted when no `--seed` flag is given.
pub const SEED_ENV: &str = "SCHWINGER_SEED";
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_SAMPLES: u64 = 10_000;

/// Sampler settings read from a JSON config file. Every key is optional;
/// command-line flags win over the file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(alias = "N")]
    pub dim: Option<usize>,
    #[serde(alias = "count")]
    pub samples: Option<u64>,
    pub ensemble: Option<String>,
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn load_opt(path: Option<&Path>) -> Result<Self> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }

    pub fn ensemble(&self) -> Result<Option<Ensemble>> {
        self.ensemble.as_deref().map(parse_ensemble).transpose()
    }
}

pub fn parse_ensemble(s: &str) -> Result<Ensemble> {
    s.parse::<Ensemble>()
        .map_err(|_| anyhow::anyhow!("unknown ensemble {s:?} (expected pure-haar or mixed-hs)"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedSource {
    Flag,
    Env,
    ConfigFile,
    Default,
}

impl fmt::Display for SeedSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeedSource::Flag => "flag",
            SeedSource::Env => "env",
            SeedSource::ConfigFile => "config-file",
            SeedSource::Default => "default",
        })
    }
}

/// `--seed` beats `SCHWINGER_SEED`, which beats the config file, which beats the default.
pub fn resolve_seed(flag: Option<u64>, env: Option<&str>, file: Option<u64>) -> Result<(u64, SeedSource)> {
    if let Some(s) = flag {
        return Ok((s, SeedSource::Flag));
    }
    if let Some(raw) = env {
        let raw = raw.trim();
        if !raw.is_empty() {
            let s = raw
                .parse::<u64>()
                .with_context(|| format!("{SEED_ENV}={raw:?} is not an unsigned 64-bit integer"))?;
            return Ok((s, SeedSource::Env));
        }
    }
    if let Some(s) = file {
        return Ok((s, SeedSource::ConfigFile));
    }
    Ok((DEFAULT_SEED, SeedSource::Default))
}

/// Reads `SCHWINGER_SEED` from the process environment.
pub fn seed_from_env() -> Option<String> {
    std::env::var(SEED_ENV).ok()
}

pub fn require_dim(flag: Option<usize>, file: &ConfigFile, min: usize) -> Result<usize> {
    let Some(n) = flag.or(file.dim) else {
        bail!("--dim is required (or set \"dim\" in the config file)");
    };
    if n < min {
        bail!("--dim must be at least {min} (got {n})");
    }
    Ok(n)
}

pub fn resolve_samples(flag: Option<u64>, file: &ConfigFile) -> Result<u64> {
    let k = flag.or(file.samples).unwrap_or(DEFAULT_SAMPLES);
    if k < 1 {
        bail!("--samples must be at least 1");
    }
    Ok(k)
}

/// Serde adapter storing an [`Ensemble`] as its kebab-case name.
pub mod ensemble_name {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(e: &Ensemble, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(e.as_str())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ensemble, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
