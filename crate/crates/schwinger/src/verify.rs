//! Invariant sweeps over random states. Each named check keeps its worst value
//! and the sample index where it occurred.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use anyhow::Result;
use clap::ValueEnum;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use schwinger_core::algebra::variance_unitary;
use schwinger_core::bounds::{
    bound_report, hierarchy_from_report, identity_suite, massar_spindel_check, relative_slack, CheckKind,
    HIERARCHY_LINKS,
};
use schwinger_core::harper::ground_state;
use schwinger_core::phase_space::{
    phase_point_hermiticity, phase_point_orthogonality, reconstruct_trig_products, reconstruct_uv_moment,
    trig_product_bounds, weyl_function, wigner_function, ModularHalf, PhasePointGrid,
};
use schwinger_core::sampling::{Admissibility, Ensemble, SamplerConfig};
use schwinger_core::{DensityMatrix, SchwingerPair};

use crate::cloud::SHARD;
use crate::config::ensemble_name;
use crate::SCHEMA_VERSION;

pub const IDENTITY_TOL: f64 = 1e-9;
pub const INEQUALITY_TOL: f64 = 1e-9;
pub const WEYL_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Identities,
    Hierarchy,
    Weyl,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Identities => "identities",
            Suite::Hierarchy => "hierarchy",
            Suite::Weyl => "weyl",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub dim: usize,
    pub samples: u64,
    pub seed: u64,
    #[serde(with = "ensemble_name")]
    pub ensemble: Ensemble,
    pub suite: Suite,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Residual; must stay below the tolerance.
    Identity,
    /// Relative slack; must stay above minus the tolerance.
    Inequality,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub suite: String,
    pub name: String,
    pub kind: Kind,
    pub tolerance: f64,
    /// Largest residual or smallest slack seen.
    pub worst: f64,
    /// Sample index of `worst`; empty for state-independent checks.
    pub worst_index: Option<u64>,
    pub evaluated: u64,
    pub failures: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub index: Option<u64>,
    pub seed: u64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub dim: usize,
    pub samples: u64,
    pub seed: u64,
    pub ensemble: String,
    pub suite: String,
    pub passed: bool,
    pub admitted: u64,
    pub excluded: u64,
    pub checks: Vec<CheckSummary>,
    /// First failing check in report order, at its worst index.
    pub first_failure: Option<Failure>,
}

#[derive(Clone, Copy, Debug)]
struct Obs {
    suite: Suite,
    name: &'static str,
    kind: Kind,
    tol: f64,
    value: f64,
}

impl Obs {
    fn identity(suite: Suite, name: &'static str, tol: f64, value: f64) -> Self {
        Obs { suite, name, kind: Kind::Identity, tol, value }
    }

    fn inequality(suite: Suite, name: &'static str, tol: f64, value: f64) -> Self {
        Obs { suite, name, kind: Kind::Inequality, tol, value }
    }

    fn fails(&self) -> bool {
        match self.kind {
            // NaN must fail, hence the negated comparisons.
            Kind::Identity => !(self.value < self.tol),
            Kind::Inequality => !(self.value >= -self.tol),
        }
    }
}

fn worse(kind: Kind, a: f64, b: f64) -> bool {
    if a.is_nan() {
        return !b.is_nan();
    }
    match kind {
        Kind::Identity => a > b,
        Kind::Inequality => a < b,
    }
}

/// Running per-check state, keyed by check order of first appearance.
#[derive(Default)]
struct Tally {
    order: Vec<(Suite, &'static str)>,
    slots: BTreeMap<(String, &'static str), CheckSummary>,
}

impl Tally {
    fn push(&mut self, o: &Obs, index: Option<u64>) {
        let key = (o.suite.to_string(), o.name);
        let slot = self.slots.entry(key).or_insert_with(|| {
            self.order.push((o.suite, o.name));
            CheckSummary {
                suite: o.suite.to_string(),
                name: o.name.to_owned(),
                kind: o.kind,
                tolerance: o.tol,
                worst: o.value,
                worst_index: index,
                evaluated: 0,
                failures: 0,
                passed: true,
            }
        });
        slot.evaluated += 1;
        if o.fails() {
            slot.failures += 1;
            slot.passed = false;
        }
        if worse(o.kind, o.value, slot.worst) {
            slot.worst = o.value;
            slot.worst_index = index;
        }
    }

    fn finish(mut self) -> Vec<CheckSummary> {
        self.order
            .iter()
            .map(|(s, n)| self.slots.remove(&(s.to_string(), *n)).expect("slot exists"))
            .collect()
    }
}

struct Context {
    pair: SchwingerPair,
    r1: f64,
    grid: Option<PhasePointGrid>,
}

fn identities(pair: &SchwingerPair, rho: &DensityMatrix, out: &mut Vec<Obs>) -> Result<()> {
    for c in identity_suite(pair, rho)? {
        out.push(match c.kind {
            CheckKind::Identity => Obs::identity(Suite::Identities, c.name, IDENTITY_TOL, c.value),
            CheckKind::Inequality => Obs::inequality(Suite::Identities, c.name, INEQUALITY_TOL, c.value),
        });
    }
    Ok(())
}

fn hierarchy(ctx: &Context, rho: &DensityMatrix, out: &mut Vec<Obs>) -> Result<bool> {
    let s = Suite::Hierarchy;
    let p = &ctx.pair;
    for op in [p.u(), p.v()] {
        let v = variance_unitary(rho, op)?;
        out.push(Obs::inequality(s, "variance_in_unit_interval", INEQUALITY_TOL, v.min(1.0 - v)));
    }
    let rep = bound_report(p, rho)?;
    out.push(Obs::inequality(s, "fh_inequality", INEQUALITY_TOL, relative_slack(rep.v_u * rep.v_v, rep.v_u * rep.v_v - rep.fh_slack)));
    let ms = massar_spindel_check(p, rho)?;
    out.push(Obs::inequality(s, "massar_spindel", INEQUALITY_TOL, relative_slack(ms.lhs, ms.rhs)));
    let Some(d) = rep.delta else {
        return Ok(false);
    };
    if let Some(prod) = ms.product {
        out.push(Obs::inequality(s, "massar_spindel_scaled", INEQUALITY_TOL, relative_slack(prod, 1.0)));
    }
    let h = hierarchy_from_report(&d, rep.r4, ctx.r1);
    for (k, name) in HIERARCHY_LINKS.iter().enumerate() {
        out.push(Obs::inequality(s, name, INEQUALITY_TOL, h.slacks[k]));
    }
    Ok(true)
}

fn weyl(ctx: &Context, rho: &DensityMatrix, out: &mut Vec<Obs>) -> Result<()> {
    let s = Suite::Weyl;
    let p = &ctx.pair;
    let grid = ctx.grid.as_ref().expect("grid built for weyl suite");
    let w = weyl_function(rho)?;
    let wig = wigner_function(rho)?;
    let via = w.to_wigner();
    let duality = wig.values.iter().zip(&via.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    out.push(Obs::identity(s, "weyl_wigner_duality", WEYL_TOL, duality));
    out.push(Obs::identity(s, "wigner_normalization", WEYL_TOL, (wig.total() - 1.0).norm()));
    out.push(Obs::identity(s, "wigner_real", WEYL_TOL, wig.max_imag()));

    let back = grid.reconstruct(&grid.symbol(rho.matrix())?)?;
    out.push(Obs::identity(s, "operator_reconstruction", IDENTITY_TOL, back.max_abs_diff(rho.matrix())?));

    let mut moment: f64 = 0.0;
    for a in w.mh.labels() {
        for b in w.mh.labels() {
            let got = reconstruct_uv_moment(&w, a, b).value;
            let want = rho.expect(&p.weyl_monomial(a, b))?;
            moment = moment.max((got - want).norm());
        }
    }
    out.push(Obs::identity(s, "uv_moments", WEYL_TOL, moment));

    let t = p.trig();
    let tp = reconstruct_trig_products(&w);
    let mut trig: f64 = 0.0;
    for (got, x, y) in [(tp.cc, &t.c_u, &t.c_v), (tp.cs, &t.c_u, &t.s_v), (tp.sc, &t.s_u, &t.c_v), (tp.ss, &t.s_u, &t.s_v)] {
        trig = trig.max((got - rho.expect(&x.mat_mul(y)?)?).norm());
    }
    out.push(Obs::identity(s, "trig_products", WEYL_TOL, trig));

    let b = trig_product_bounds(&w);
    let mut slack = f64::INFINITY;
    for (v, lo, hi) in [
        (tp.cc.norm(), b.cc_lower, b.cc_upper),
        (tp.ss.norm(), b.cc_lower, b.cc_upper),
        (tp.cs.norm(), b.cs_lower, b.cs_upper),
        (tp.sc.norm(), b.cs_lower, b.cs_upper),
    ] {
        slack = slack.min(v - lo).min(hi - v);
    }
    out.push(Obs::inequality(s, "triangle_bounds", WEYL_TOL, slack));
    out.push(Obs::inequality(s, "cauchy_schwarz", WEYL_TOL, b.cauchy_upper - tp.cc.norm_sqr()));
    Ok(())
}

/// Runs the selected suites. `Err` means the sweep could not run (bad
/// parameters, odd-dimension precondition); a failing invariant is reported
/// through `passed = false`.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let suite = cfg.suite;
    let pair = SchwingerPair::new(cfg.dim)?;
    let sampler = SamplerConfig::new(cfg.dim, cfg.ensemble, cfg.samples, cfg.seed)?;
    let grid = if suite.includes(Suite::Weyl) {
        match ModularHalf::new(cfg.dim) {
            Ok(_) => Some(PhasePointGrid::new(cfg.dim)?),
            Err(e) if suite == Suite::Weyl => return Err(e.into()),
            Err(_) => None,
        }
    } else {
        None
    };
    let r1 = ground_state(cfg.dim)?.r1;
    let ctx = Context { pair, r1, grid };
    let mut tally = Tally::default();

    if let Some(g) = &ctx.grid {
        tally.push(&Obs::identity(Suite::Weyl, "phase_point_orthogonality", IDENTITY_TOL, phase_point_orthogonality(g)?), None);
        tally.push(&Obs::identity(Suite::Weyl, "phase_point_hermiticity", IDENTITY_TOL, phase_point_hermiticity(g)?), None);
    }

    let mut adm = Admissibility::default();
    let mut start = 0;
    while start < cfg.samples {
        let end = (start + SHARD).min(cfg.samples);
        let shard: Vec<(Vec<Obs>, bool)> = (start..end)
            .into_par_iter()
            .map(|i| -> Result<(Vec<Obs>, bool)> {
                let rho = sampler.sample_at(i)?;
                let mut obs = Vec::new();
                if suite.includes(Suite::Identities) {
                    identities(&ctx.pair, &rho, &mut obs)?;
                }
                let mut admissible = true;
                if suite.includes(Suite::Hierarchy) {
                    admissible = hierarchy(&ctx, &rho, &mut obs)?;
                }
                if ctx.grid.is_some() {
                    weyl(&ctx, &rho, &mut obs)?;
                }
                Ok((obs, admissible))
            })
            .collect::<Result<_>>()?;
        for (k, (obs, admissible)) in shard.iter().enumerate() {
            let i = start + k as u64;
            adm.total += 1;
            adm.excluded += !admissible as u64;
            for o in obs {
                tally.push(o, Some(i));
            }
        }
        start = end;
    }

    let checks = tally.finish();
    let first_failure = checks.iter().find(|c| !c.passed).map(|c| Failure {
        check: format!("{}/{}", c.suite, c.name),
        index: c.worst_index,
        seed: cfg.seed,
        value: c.worst,
    });
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        dim: cfg.dim,
        samples: cfg.samples,
        seed: cfg.seed,
        ensemble: cfg.ensemble.as_str().to_owned(),
        suite: suite.to_string(),
        passed: checks.iter().all(|c| c.passed),
        admitted: adm.admitted(),
        excluded: adm.excluded,
        checks,
        first_failure,
    })
}

pub fn render(r: &VerifyReport) -> String {
    let mut s = format!(
        "verify suite={} N={} samples={} seed={} ensemble={} admitted={} excluded={}\n",
        r.suite, r.dim, r.samples, r.seed, r.ensemble, r.admitted, r.excluded
    );
    for c in &r.checks {
        let label = match c.kind {
            Kind::Identity => "max residual",
            Kind::Inequality => "min slack",
        };
        s.push_str(&format!(
            "  {} {:<10} {:<34} {label:>12} {:>11.3e}  (n={}, failures={})\n",
            if c.passed { "ok  " } else { "FAIL" },
            c.suite,
            c.name,
            c.worst,
            c.evaluated,
            c.failures
        ));
    }
    match &r.first_failure {
        None => s.push_str("result: pass\n"),
        Some(f) => s.push_str(&format!(
            "result: FAIL {} = {:e} at seed={} index={}\n",
            f.check,
            f.value,
            f.seed,
            f.index.map_or_else(|| "-".to_owned(), |i| i.to_string())
        )),
    }
    s
}
