//! Ground-state report for the Harper Hamiltonian `-sin θ C_U - cos θ C_V` at `θ = π/4`.

use std::path::PathBuf;

use anyhow::Result;
use serde::{Deserialize, Serialize};

use schwinger_core::harper::{closed_form, fourier_commutation_check, ground_state, theta_scan};

use crate::io::c64_pair;
use crate::SCHEMA_VERSION;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarperConfig {
    pub dim: usize,
    pub theta_scan: bool,
    pub grid: usize,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormSummary {
    pub amplitudes: Vec<String>,
    pub h0: String,
    pub v_delta: String,
    pub s0: String,
    pub s0_value: f64,
    pub r1_value: f64,
    /// Largest deviation of `h₀`, `V_δU`, `S0` and `R1` from the closed form.
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaScanReport {
    pub grid: usize,
    pub theta_star: f64,
    pub value_star: f64,
    pub curve: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarperReport {
    pub schema_version: u32,
    pub n: usize,
    pub theta: f64,
    pub h0: f64,
    pub gap: f64,
    pub psi0: Vec<[f64; 2]>,
    pub v0_u: f64,
    pub v0_v: f64,
    pub v0_du: f64,
    pub v0_dv: f64,
    pub s0: f64,
    pub r1: f64,
    /// `⟨ψ₀|𝔉|ψ₀⟩`
    pub f0: [f64; 2],
    /// `‖[H, 𝔉]‖_HS`
    pub commutator_norm: f64,
    pub closed_form: Option<ClosedFormSummary>,
    pub theta_scan: Option<ThetaScanReport>,
}

pub fn harper_report(cfg: &HarperConfig) -> Result<HarperReport> {
    let n = cfg.dim;
    let g = ground_state(n)?;
    let fc = fourier_commutation_check(n)?;
    let closed = match closed_form(n) {
        Ok(c) => {
            let dev = [
                (g.h0, c.h0),
                (g.v0_du, c.expected_v_delta),
                (g.s0, c.expected_s0),
                (g.r1, c.expected_r1()),
            ]
            .iter()
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
            Some(ClosedFormSummary {
                amplitudes: c.radicals.iter().map(|s| s.to_string()).collect(),
                h0: c.h0_radical.to_owned(),
                v_delta: c.v_delta_radical.to_owned(),
                s0: c.s0_radical.to_owned(),
                s0_value: c.expected_s0,
                r1_value: c.expected_r1(),
                max_deviation: dev,
            })
        }
        Err(_) => None,
    };
    let scan = if cfg.theta_scan {
        let s = theta_scan(n, cfg.grid)?;
        Some(ThetaScanReport {
            grid: cfg.grid,
            theta_star: s.theta_star,
            value_star: s.value_star,
            curve: s.curve.iter().map(|&(t, v)| [t, v]).collect(),
        })
    } else {
        None
    };
    Ok(HarperReport {
        schema_version: SCHEMA_VERSION,
        n,
        theta: g.theta_star,
        h0: g.h0,
        gap: g.gap,
        psi0: g.psi0.iter().map(|&z| c64_pair(z)).collect(),
        v0_u: g.v0_u,
        v0_v: g.v0_v,
        v0_du: g.v0_du,
        v0_dv: g.v0_dv,
        s0: g.s0,
        r1: g.r1,
        f0: c64_pair(fc.f0),
        commutator_norm: fc.comm_norm,
        closed_form: closed,
        theta_scan: scan,
    })
}

pub fn render(r: &HarperReport) -> String {
    let mut s = format!(
        "Harper ground state N={} θ={:.6}\n  h0 = {:.12}  gap = {:.3e}\n  V0_U = {:.12}  V0_V = {:.12}\n  V0_δU = {:.12}  V0_δV = {:.12}\n  S0 = {:.12}  R1 = {:.12}\n  f0 = {:+.12}{:+.3e}i  ‖[H,F]‖ = {:.3e}\n",
        r.n, r.theta, r.h0, r.gap, r.v0_u, r.v0_v, r.v0_du, r.v0_dv, r.s0, r.r1, r.f0[0], r.f0[1], r.commutator_norm
    );
    s.push_str("  psi0:");
    for z in &r.psi0 {
        s.push_str(&format!(" {:.9}", z[0]));
    }
    s.push('\n');
    match &r.closed_form {
        Some(c) => s.push_str(&format!("  closed form: S0 = {}  (max deviation {:.2e})\n", c.s0, c.max_deviation)),
        None => s.push_str("  closed form: none tabulated for this N (numerical path only)\n"),
    }
    if let Some(t) = &r.theta_scan {
        s.push_str(&format!(
            "  θ scan ({} points): θ* = {:.9} (π/4 = {:.9}), max = {:.12}\n",
            t.grid,
            t.theta_star,
            std::f64::consts::FRAC_PI_4,
            t.value_star
        ));
    }
    s
}
