//! A fully resolved command, runnable directly or from a manifest.

use std::path::{Path, PathBuf};

use anyhow::Result;
use serde::{Deserialize, Serialize};

use crate::cloud::{self, CloudConfig};
use crate::config::SeedSource;
use crate::harper_report::{self, HarperConfig};
use crate::io;
use crate::manifest::{now, RunManifest};
use crate::table::{self, Table1Config};
use crate::verify::{self, VerifyConfig, IDENTITY_TOL, WEYL_TOL};
use crate::weyl_report::{self, StateSource, WeylConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Job {
    Cloud(CloudConfig),
    Table1(Table1Config),
    Verify(VerifyConfig),
    Harper(HarperConfig),
    Weyl(WeylConfig),
}

/// What a finished job produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    /// `false` when an invariant or consistency check failed.
    pub passed: bool,
    /// Human-readable summary for stdout.
    pub text: String,
    pub outputs: Vec<PathBuf>,
    pub manifest: Option<PathBuf>,
}

impl Job {
    pub fn command(&self) -> &'static str {
        match self {
            Job::Cloud(_) => "cloud",
            Job::Table1(_) => "table1",
            Job::Verify(_) => "verify",
            Job::Harper(_) => "harper",
            Job::Weyl(_) => "weyl",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Job::Cloud(c) => Some(c.seed),
            Job::Verify(c) => Some(c.seed),
            Job::Weyl(WeylConfig { source: StateSource::Sampled { seed, .. }, .. }) => Some(*seed),
            _ => None,
        }
    }

    /// Primary output file, if the job writes one.
    pub fn out(&self) -> Option<&Path> {
        match self {
            Job::Cloud(c) => Some(&c.out),
            Job::Table1(c) => c.out.as_deref(),
            Job::Verify(c) => c.out.as_deref(),
            Job::Harper(c) => c.out.as_deref(),
            Job::Weyl(c) => c.out.as_deref(),
        }
    }

    /// Same job, writing its primary output to `path`.
    pub fn with_out(mut self, path: PathBuf) -> Self {
        match &mut self {
            Job::Cloud(c) => c.out = path,
            Job::Table1(c) => c.out = Some(path),
            Job::Verify(c) => c.out = Some(path),
            Job::Harper(c) => c.out = Some(path),
            Job::Weyl(c) => c.out = Some(path),
        }
        self
    }

    /// Runs the job, writes its outputs and, when there are any, a manifest beside the primary one.
    pub fn run(&self, seed_source: Option<SeedSource>) -> Result<Outcome> {
        let mut manifest = RunManifest::new(self, seed_source);
        let (passed, text, outputs, notes) = match self {
            Job::Cloud(c) => {
                let (s, outputs) = cloud::write_cloud(c)?;
                let text = format!(
                    "cloud N={} samples={} ensemble={} seed={}\n  admitted {} excluded {}\n  min S_dU*S_dV = {} (index {})\n  R1 = {:.9}  R4 = {:.9}\n  hierarchy {}\n  dominance: H > F in {:.4}, csc²F/F3 > H/F3 in {:.4}\n",
                    s.dim,
                    s.samples,
                    s.ensemble,
                    s.seed,
                    s.admitted,
                    s.excluded,
                    s.min_product.map_or_else(|| "-".to_owned(), |p| format!("{p:.12}")),
                    s.argmin_index.map_or_else(|| "-".to_owned(), |i| i.to_string()),
                    s.r1,
                    s.r4,
                    if s.hierarchy_ok { "holds on every admissible sample" } else { "VIOLATED" },
                    s.dominance.h_gt_f,
                    s.dominance.scaled_f_gt_h
                );
                let notes = serde_json::json!({
                    "min_product": s.min_product,
                    "r1": s.r1,
                    "dominance": s.dominance,
                });
                (s.hierarchy_ok, text, outputs, notes)
            }
            Job::Table1(c) => {
                let rows = table::table1()?;
                let outputs = table::write_table1(c, &rows)?;
                let passed = rows.iter().all(|r| r.max_deviation < 1e-9);
                (passed, table::render(&rows), outputs, serde_json::Value::Null)
            }
            Job::Verify(c) => {
                let r = verify::run_verify(c)?;
                let mut outputs = vec![];
                if let Some(out) = &c.out {
                    io::write_json(out, &r)?;
                    outputs.push(out.clone());
                }
                let notes = serde_json::json!({ "first_failure": r.first_failure });
                (r.passed, verify::render(&r), outputs, notes)
            }
            Job::Harper(c) => {
                let r = harper_report::harper_report(c)?;
                let mut outputs = vec![];
                if let Some(out) = &c.out {
                    io::write_json(out, &r)?;
                    outputs.push(out.clone());
                }
                let passed = r.commutator_norm < 1e-10
                    && r.closed_form.as_ref().map_or(true, |cf| cf.max_deviation < 1e-9);
                (passed, harper_report::render(&r), outputs, serde_json::Value::Null)
            }
            Job::Weyl(c) => {
                let r = weyl_report::weyl_report(c)?;
                let mut outputs = vec![];
                if let Some(out) = &c.out {
                    io::write_json(out, &r)?;
                    outputs.push(out.clone());
                }
                let l = &r.residuals;
                let passed = l.weyl_wigner_duality < WEYL_TOL
                    && l.uv_moments < WEYL_TOL
                    && l.trig_products < WEYL_TOL
                    && l.wigner_normalization < WEYL_TOL
                    && l.operator_reconstruction < IDENTITY_TOL;
                (passed, weyl_report::render(&r), outputs, serde_json::Value::Null)
            }
        };
        let manifest_path = match self.out() {
            Some(out) if !outputs.is_empty() => {
                manifest.finished = now();
                manifest.outputs = outputs.clone();
                manifest.passed = passed;
                manifest.notes = notes;
                let p = io::sibling(out, "manifest.json");
                io::write_json(&p, &manifest)?;
                Some(p)
            }
            _ => None,
        };
        Ok(Outcome { passed, text, outputs, manifest: manifest_path })
    }
}

/// Re-runs the job recorded in a manifest, optionally redirecting its primary output.
pub fn rerun(manifest: &Path, out: Option<PathBuf>) -> Result<Outcome> {
    let m = RunManifest::load(manifest)?;
    let job = match out {
        Some(p) => m.config.with_out(p),
        None => m.config,
    };
    job.run(m.seed_source)
}
