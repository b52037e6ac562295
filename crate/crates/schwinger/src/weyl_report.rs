//! Weyl and Wigner grids of one state, with reconstruction residuals.

use std::path::PathBuf;

use anyhow::Result;
use serde::{Deserialize, Serialize};

use schwinger_core::phase_space::{
    reconstruct_trig_products, reconstruct_uv_moment, trig_product_bounds, weyl_function, wigner_function,
    ModularHalf, PhasePointGrid, TrigProductBounds,
};
use schwinger_core::sampling::{Ensemble, SamplerConfig};
use schwinger_core::{DensityMatrix, SchwingerPair};

use crate::config::ensemble_name;
use crate::io::{c64_pair, load_state};
use crate::SCHEMA_VERSION;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateSource {
    Sampled {
        #[serde(with = "ensemble_name")]
        ensemble: Ensemble,
        seed: u64,
        index: u64,
    },
    File { path: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylConfig {
    pub dim: usize,
    pub source: StateSource,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub weyl_wigner_duality: f64,
    pub operator_reconstruction: f64,
    pub uv_moments: f64,
    pub trig_products: f64,
    pub wigner_normalization: f64,
    pub wigner_max_imag: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub cc_lower: f64,
    pub cc_upper: f64,
    pub cs_lower: f64,
    pub cs_upper: f64,
    pub cu2: f64,
    pub cv2: f64,
    pub cauchy_upper: f64,
    pub cc_abs: f64,
    pub ss_abs: f64,
    pub cs_abs: f64,
    pub sc_abs: f64,
}

impl BoundsReport {
    fn new(b: TrigProductBounds, cc: f64, ss: f64, cs: f64, sc: f64) -> Self {
        BoundsReport {
            cc_lower: b.cc_lower,
            cc_upper: b.cc_upper,
            cs_lower: b.cs_lower,
            cs_upper: b.cs_upper,
            cu2: b.cu2,
            cv2: b.cv2,
            cauchy_upper: b.cauchy_upper,
            cc_abs: cc,
            ss_abs: ss,
            cs_abs: cs,
            sc_abs: sc,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeylReport {
    pub schema_version: u32,
    pub n: usize,
    pub source: StateSource,
    /// Labels `-ℓ..=ℓ` indexing both grid axes.
    pub labels: Vec<i64>,
    /// `W̃(η,ξ)` as `[re, im]`, row-major in `η`.
    pub weyl: Vec<Vec<[f64; 2]>>,
    /// `W(μ,ν)` (real), row-major in `μ`.
    pub wigner: Vec<Vec<f64>>,
    pub residuals: Residuals,
    pub bounds: BoundsReport,
}

pub fn load_source(dim: usize, source: &StateSource) -> Result<DensityMatrix> {
    let rho = match source {
        StateSource::Sampled { ensemble, seed, index } => {
            SamplerConfig::new(dim, *ensemble, index + 1, *seed)?.sample_at(*index)?
        }
        StateSource::File { path } => load_state(path)?,
    };
    anyhow::ensure!(rho.dim() == dim, "state has dimension {}, expected --dim {dim}", rho.dim());
    Ok(rho)
}

pub fn weyl_report(cfg: &WeylConfig) -> Result<WeylReport> {
    let mh = ModularHalf::new(cfg.dim)?;
    let rho = load_source(cfg.dim, &cfg.source)?;
    let pair = SchwingerPair::new(cfg.dim)?;
    let grid = PhasePointGrid::new(cfg.dim)?;
    let w = weyl_function(&rho)?;
    let wig = wigner_function(&rho)?;
    let via = w.to_wigner();
    let labels: Vec<i64> = mh.labels().collect();

    let duality = wig.values.iter().zip(&via.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let back = grid.reconstruct(&grid.symbol(rho.matrix())?)?;
    let mut moments: f64 = 0.0;
    for &a in &labels {
        for &b in &labels {
            let got = reconstruct_uv_moment(&w, a, b).value;
            moments = moments.max((got - rho.expect(&pair.weyl_monomial(a, b))?).norm());
        }
    }
    let t = pair.trig();
    let tp = reconstruct_trig_products(&w);
    let mut trig: f64 = 0.0;
    for (got, x, y) in [(tp.cc, &t.c_u, &t.c_v), (tp.cs, &t.c_u, &t.s_v), (tp.sc, &t.s_u, &t.c_v), (tp.ss, &t.s_u, &t.s_v)] {
        trig = trig.max((got - rho.expect(&x.mat_mul(y)?)?).norm());
    }

    Ok(WeylReport {
        schema_version: SCHEMA_VERSION,
        n: cfg.dim,
        source: cfg.source.clone(),
        weyl: labels.iter().map(|&e| labels.iter().map(|&x| c64_pair(w.get(e, x))).collect()).collect(),
        wigner: labels.iter().map(|&m| labels.iter().map(|&v| wig.get(m, v).re).collect()).collect(),
        labels,
        residuals: Residuals {
            weyl_wigner_duality: duality,
            operator_reconstruction: back.max_abs_diff(rho.matrix())?,
            uv_moments: moments,
            trig_products: trig,
            wigner_normalization: (wig.total() - 1.0).norm(),
            wigner_max_imag: wig.max_imag(),
        },
        bounds: BoundsReport::new(trig_product_bounds(&w), tp.cc.norm(), tp.ss.norm(), tp.cs.norm(), tp.sc.norm()),
    })
}

pub fn render(r: &WeylReport) -> String {
    let l = &r.residuals;
    let mut s = format!("phase space N={}\n  W(μ,ν):\n", r.n);
    for row in &r.wigner {
        s.push_str("   ");
        for v in row {
            s.push_str(&format!(" {v:>+9.5}"));
        }
        s.push('\n');
    }
    s.push_str(&format!(
        "  residuals: duality {:.2e}, reconstruction {:.2e}, moments {:.2e}, trig products {:.2e}, normalization {:.2e}\n",
        l.weyl_wigner_duality, l.operator_reconstruction, l.uv_moments, l.trig_products, l.wigner_normalization
    ));
    let b = &r.bounds;
    s.push_str(&format!(
        "  |<C_U C_V>| = {:.6} in [{:.6}, {:.6}], |<C_U S_V>| = {:.6} in [{:.6}, {:.6}], Cauchy-Schwarz {:.6} <= {:.6}\n",
        b.cc_abs, b.cc_lower, b.cc_upper, b.cs_abs, b.cs_lower, b.cs_upper, b.cc_abs * b.cc_abs, b.cauchy_upper
    ));
    s
}
