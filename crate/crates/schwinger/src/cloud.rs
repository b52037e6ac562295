//! Per-state bound clouds: `S_δU` against `S_δV` with the bound values that
//! sit under each point.

use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use schwinger_core::bounds::{bound_report, hierarchy_from_report, HIERARCHY_LINKS};
use schwinger_core::harper::ground_state;
use schwinger_core::sampling::{Admissibility, Ensemble, SamplerConfig};
use schwinger_core::tol;
use schwinger_core::SchwingerPair;

use crate::config::ensemble_name;
use crate::io::{self, Format};
use crate::SCHEMA_VERSION;

/// Samples per parallel shard; shards are merged in index order.
pub const SHARD: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudConfig {
    pub dim: usize,
    pub samples: u64,
    #[serde(with = "ensemble_name")]
    pub ensemble: Ensemble,
    pub seed: u64,
    pub out: PathBuf,
    pub format: Format,
}

impl CloudConfig {
    pub fn sampler(&self) -> Result<SamplerConfig> {
        Ok(SamplerConfig::new(self.dim, self.ensemble, self.samples, self.seed)?)
    }
}

/// One row per sampled state. δ-quantities are empty for inadmissible states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudRecord {
    pub index: u64,
    pub admissible: bool,
    pub v_u: f64,
    pub v_v: f64,
    pub s_du: Option<f64>,
    pub s_dv: Option<f64>,
    pub product: Option<f64>,
    pub f: f64,
    pub h: f64,
    pub r2: Option<f64>,
    pub r3: Option<f64>,
    pub r3_term: Option<String>,
}

pub const CLOUD_COLUMNS: [&str; 12] = [
    "index", "admissible", "v_u", "v_v", "s_du", "s_dv", "product", "f", "h", "r2", "r3", "r3_term",
];

/// Share of states on each side of the `H` against `F` comparisons.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Dominance {
    /// Fraction of all states with `H > F`.
    pub h_gt_f: f64,
    /// Fraction of admissible states with `csc²(π/N) F/F3 > H/F3`.
    pub scaled_f_gt_h: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkSlack {
    pub link: String,
    pub min_slack: Option<f64>,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudSummary {
    pub schema_version: u32,
    pub dim: usize,
    pub ensemble: String,
    pub samples: u64,
    pub seed: u64,
    pub admitted: u64,
    pub excluded: u64,
    pub vanishing_u: u64,
    pub vanishing_v: u64,
    pub min_product: Option<f64>,
    pub argmin_index: Option<u64>,
    pub r1: f64,
    pub r4: f64,
    pub hierarchy: Vec<LinkSlack>,
    pub hierarchy_ok: bool,
    pub dominance: Dominance,
}

/// Evaluates sample `index` of `cfg` together with its hierarchy slacks.
pub fn evaluate(
    pair: &SchwingerPair,
    cfg: &SamplerConfig,
    r1: f64,
    index: u64,
) -> Result<(CloudRecord, Option<[f64; 5]>, Option<bool>)> {
    let rho = cfg.sample_at(index)?;
    let rep = bound_report(pair, &rho)?;
    let s2 = pair.sin_half().powi(2);
    let (rec, slacks, scaled) = match &rep.delta {
        Some(d) => {
            let h = hierarchy_from_report(d, rep.r4, r1);
            let rec = CloudRecord {
                index,
                admissible: true,
                v_u: rep.v_u,
                v_v: rep.v_v,
                s_du: Some(d.s_du),
                s_dv: Some(d.s_dv),
                product: Some(d.product),
                f: rep.f,
                h: rep.h,
                r2: Some(d.r2),
                r3: Some(d.r3.value),
                r3_term: Some(d.r3.term.as_str().to_owned()),
            };
            (rec, Some(h.slacks), Some(d.f_over_f3 / s2 > d.h_over_f3))
        }
        None => (
            CloudRecord {
                index,
                admissible: false,
                v_u: rep.v_u,
                v_v: rep.v_v,
                s_du: None,
                s_dv: None,
                product: None,
                f: rep.f,
                h: rep.h,
                r2: None,
                r3: None,
                r3_term: None,
            },
            None,
            None,
        ),
    };
    Ok((rec, slacks, scaled))
}

struct Accumulator {
    adm: Admissibility,
    min_product: Option<(f64, u64)>,
    link_min: [Option<f64>; 5],
    link_bad: [u64; 5],
    h_gt_f: u64,
    scaled: u64,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator {
            adm: Admissibility::default(),
            min_product: None,
            link_min: [None; 5],
            link_bad: [0; 5],
            h_gt_f: 0,
            scaled: 0,
        }
    }

    fn push(&mut self, rec: &CloudRecord, slacks: Option<[f64; 5]>, scaled: Option<bool>) {
        let modulus = |v: f64| (1.0 - v).max(0.0).sqrt();
        self.adm.total += 1;
        self.adm.vanishing_u += (modulus(rec.v_u) <= tol::MEAN_CUTOFF) as u64;
        self.adm.vanishing_v += (modulus(rec.v_v) <= tol::MEAN_CUTOFF) as u64;
        self.adm.excluded += !rec.admissible as u64;
        self.h_gt_f += (rec.h > rec.f) as u64;
        self.scaled += scaled.unwrap_or(false) as u64;
        if let Some(p) = rec.product {
            if self.min_product.map_or(true, |(m, _)| p < m) {
                self.min_product = Some((p, rec.index));
            }
        }
        if let Some(s) = slacks {
            for k in 0..5 {
                self.link_min[k] = Some(self.link_min[k].map_or(s[k], |m| m.min(s[k])));
                self.link_bad[k] += (s[k] < -tol::SLACK) as u64;
            }
        }
    }
}

pub struct CloudRun {
    pub summary: CloudSummary,
}

/// Evaluates every sample, shard by shard, handing each ordered shard to `sink`.
pub fn run_cloud_with<F>(cfg: &CloudConfig, mut sink: F) -> Result<CloudRun>
where
    F: FnMut(&[CloudRecord]) -> Result<()>,
{
    let sampler = cfg.sampler()?;
    let pair = SchwingerPair::new(cfg.dim)?;
    let gs = ground_state(cfg.dim)?;
    let mut acc = Accumulator::new();
    let mut start = 0;
    while start < cfg.samples {
        let end = (start + SHARD).min(cfg.samples);
        let shard: Vec<_> = (start..end)
            .into_par_iter()
            .map(|i| evaluate(&pair, &sampler, gs.r1, i))
            .collect::<Result<_>>()?;
        let mut recs = Vec::with_capacity(shard.len());
        for (rec, slacks, scaled) in shard {
            acc.push(&rec, slacks, scaled);
            recs.push(rec);
        }
        sink(&recs)?;
        start = end;
    }
    let total = acc.adm.total;
    let admitted = total - acc.adm.excluded;
    let frac = |k: u64, of: u64| if of == 0 { 0.0 } else { k as f64 / of as f64 };
    let hierarchy: Vec<LinkSlack> = HIERARCHY_LINKS
        .iter()
        .enumerate()
        .map(|(k, name)| LinkSlack {
            link: (*name).to_owned(),
            min_slack: acc.link_min[k],
            violations: acc.link_bad[k],
        })
        .collect();
    let summary = CloudSummary {
        schema_version: SCHEMA_VERSION,
        dim: cfg.dim,
        ensemble: cfg.ensemble.as_str().to_owned(),
        samples: cfg.samples,
        seed: cfg.seed,
        admitted,
        excluded: acc.adm.excluded,
        vanishing_u: acc.adm.vanishing_u,
        vanishing_v: acc.adm.vanishing_v,
        min_product: acc.min_product.map(|p| p.0),
        argmin_index: acc.min_product.map(|p| p.1),
        r1: gs.r1,
        r4: 1.0 + pair.sin_phi(),
        hierarchy_ok: hierarchy.iter().all(|l| l.violations == 0),
        hierarchy,
        dominance: Dominance {
            h_gt_f: frac(acc.h_gt_f, total),
            scaled_f_gt_h: frac(acc.scaled, admitted),
        },
    };
    Ok(CloudRun { summary })
}

/// Runs the cloud without writing records.
pub fn summarize(cfg: &CloudConfig) -> Result<CloudSummary> {
    Ok(run_cloud_with(cfg, |_| Ok(()))?.summary)
}

/// Writes the records to `cfg.out` and the summary next to it; returns both paths.
pub fn write_cloud(cfg: &CloudConfig) -> Result<(CloudSummary, Vec<PathBuf>)> {
    let out = &cfg.out;
    let run = match cfg.format {
        Format::Csv => {
            let mut w = io::csv_writer(out)?;
            let run = run_cloud_with(cfg, |recs| {
                for r in recs {
                    w.serialize(r)?;
                }
                Ok(())
            })?;
            w.flush()?;
            run
        }
        Format::Json => {
            let mut w = io::create(out)?;
            write!(
                w,
                "{{\"schema_version\":{SCHEMA_VERSION},\"kind\":\"cloud\",\"dim\":{},\"records\":[",
                cfg.dim
            )?;
            let mut first = true;
            let run = run_cloud_with(cfg, |recs| {
                for r in recs {
                    if !first {
                        w.write_all(b",")?;
                    }
                    first = false;
                    w.write_all(b"\n")?;
                    serde_json::to_writer(&mut w, r)?;
                }
                Ok(())
            })?;
            w.write_all(b"\n]}\n")?;
            w.flush()?;
            run
        }
    };
    let summary_path = io::sibling(out, "summary.json");
    io::write_json(&summary_path, &run.summary)?;
    Ok((run.summary, vec![out.clone(), summary_path]))
}
