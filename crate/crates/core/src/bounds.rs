//! Correlation functionals `F`, `H` and the chain of lower bounds on the
//! scaled uncertainty product `S_δU · S_δV`.
//!
//! `H` is the four-term sum `Σ |⟨X Y⟩|²` over `X ∈ {C_U, S_U}`,
//! `Y ∈ {C_V, S_V}`. It equals `1 - ½(V_UV + V_UV†)`, which is also
//! `½(|⟨UV⟩|² + |⟨UV†⟩|²)`.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::algebra::{
    admissible_mean, check_dim, complex_covariance, covariance, dressed_quartet, expectation,
    delta_variance_from_mean, variance, variance_from_mean, DensityMatrix, DressedQuartet, SchwingerPair,
};
use crate::linalg::{CMatrix, C64, I};
use crate::tol::{self, rel_residual, scale};
use crate::{Error, Operator, Result};

/// First and second moments of the trig quartet on one state.
#[derive(Clone, Copy, Debug)]
pub struct Moments {
    pub mean_u: C64,
    pub mean_v: C64,
    /// `[⟨C_U⟩, ⟨S_U⟩]`
    pub mu: [f64; 2],
    /// `[⟨C_V⟩, ⟨S_V⟩]`
    pub mv: [f64; 2],
    /// `cross[i][j] = ⟨X_i Y_j⟩` with `X = (C_U, S_U)`, `Y = (C_V, S_V)`.
    pub cross: [[C64; 2]; 2],
    pub uv: C64,
    pub uvd: C64,
    pub v_u: f64,
    pub v_v: f64,
}

impl Moments {
    pub fn new(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<Self> {
        check_dim(pair, rho)?;
        let t = pair.trig();
        let r = rho.matrix();
        let mean_u = expectation(rho, pair.u())?;
        let mean_v = expectation(rho, pair.v())?;
        let cv_rho = t.c_v.mat_mul(r)?;
        let sv_rho = t.s_v.mat_mul(r)?;
        let mut cross = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, x) in t.u_side().into_iter().enumerate() {
            cross[i][0] = x.trace_product(&cv_rho)?;
            cross[i][1] = x.trace_product(&sv_rho)?;
        }
        let uv = pair.u().trace_product(&pair.v().mat_mul(r)?)?;
        let uvd = pair.u().trace_product(&pair.v().adjoint().mat_mul(r)?)?;
        Ok(Moments {
            mean_u,
            mean_v,
            mu: [mean_u.re, mean_u.im],
            mv: [mean_v.re, mean_v.im],
            cross,
            uv,
            uvd,
            v_u: variance_from_mean(mean_u)?,
            v_v: variance_from_mean(mean_v)?,
        })
    }

    /// `Cov(X_i, Y_j)`.
    pub fn cov(&self, i: usize, j: usize) -> f64 {
        self.cross[i][j].re - self.mu[i] * self.mv[j]
    }

    /// `F = Σ Cov²(X_i, Y_j)`.
    pub fn f(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                s += self.cov(i, j).powi(2);
            }
        }
        s
    }

    /// `H = Σ |⟨X_i Y_j⟩|²`.
    pub fn h_four_term(&self) -> f64 {
        self.cross.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// `H = 1 - ½(V_UV + V_UV†)`.
    pub fn h_variances(&self) -> f64 {
        let v_uv = 1.0 - self.uv.norm_sqr();
        let v_uvd = 1.0 - self.uvd.norm_sqr();
        1.0 - 0.5 * (v_uv + v_uvd)
    }

    /// `F₁ = ¼ Σ ⟨{X_i, Y_j}⟩²`.
    pub fn f1(&self) -> f64 {
        self.cross.iter().flatten().map(|z| z.re * z.re).sum()
    }

    /// `F₂ = Σ ⟨X_i⟩⟨Y_j⟩⟨{X_i, Y_j}⟩`.
    pub fn f2(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                s += self.mu[i] * self.mv[j] * 2.0 * self.cross[i][j].re;
            }
        }
        s
    }

    /// `F₂` from `⟨U⟩`, `⟨V⟩`, `⟨UV⟩`, `⟨UV†⟩` and `ω`.
    pub fn f2_from_unitaries(&self, omega: C64) -> f64 {
        let one = C64::new(1.0, 0.0);
        let a = self.mean_u * self.mean_v;
        let b = self.mean_u * self.mean_v.conj();
        let p = (one + omega) * self.uv;
        let q = (one + omega.conj()) * self.uvd;
        0.5 * (a.re * p.re + b.re * q.re + a.im * p.im + b.im * q.im)
    }

    /// `F₃ = Σ ⟨X_i⟩²⟨Y_j⟩²`.
    pub fn f3_means(&self) -> f64 {
        (self.mu[0].powi(2) + self.mu[1].powi(2)) * (self.mv[0].powi(2) + self.mv[1].powi(2))
    }

    /// `F₃ = |⟨U⟩|²|⟨V⟩|²`.
    pub fn f3(&self) -> f64 {
        self.mean_u.norm_sqr() * self.mean_v.norm_sqr()
    }

    /// `F₃ = (1 - V_U)(1 - V_V)`; loses relative accuracy when a mean is small.
    pub fn f3_variances(&self) -> f64 {
        (1.0 - self.v_u) * (1.0 - self.v_v)
    }

    /// `V_δU`, `V_δV` evaluated from the means.
    pub fn delta_variances(&self) -> Result<(f64, f64)> {
        Ok((delta_variance_from_mean(self.mean_u)?, delta_variance_from_mean(self.mean_v)?))
    }

    /// Dressed covariances `F₃·Cov(·_δU, ·_δV)` in the order CC, CS, SC, SS,
    /// expanded in undressed covariances and means.
    pub fn dressed_covariance_expansions(&self) -> [f64; 4] {
        let [cu, su] = self.mu;
        let [cv, sv] = self.mv;
        let cc = self.cov(0, 0);
        let cs = self.cov(0, 1);
        let sc = self.cov(1, 0);
        let ss = self.cov(1, 1);
        [
            cc * cu * cv + ss * su * sv + cs * cu * sv + sc * su * cv,
            -cc * cu * sv + ss * su * cv + cs * cu * cv - sc * su * sv,
            -cc * su * cv + ss * cu * sv - cs * su * sv + sc * cu * cv,
            cc * su * sv + ss * cu * cv - cs * su * cv - sc * cu * sv,
        ]
    }

    fn admissible(&self) -> Result<()> {
        admissible_mean(Operator::U, self.mean_u)?;
        admissible_mean(Operator::V, self.mean_v)?;
        Ok(())
    }
}

/// Which argument of the max realises `R3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum R3Term {
    OnePlusG,
    ScaledF,
    HRatio,
}

impl R3Term {
    pub fn as_str(self) -> &'static str {
        match self {
            R3Term::OnePlusG => "one_plus_g",
            R3Term::ScaledF => "scaled_f",
            R3Term::HRatio => "h_ratio",
        }
    }
}

/// `R3 = [1 + sin(2π/N)] · max(1 + G, csc²(π/N) F/F₃, H/F₃)`.
///
/// `one_plus_g` is absent for `N = 2`, where `G` is undefined.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct R3 {
    pub value: f64,
    pub term: R3Term,
    pub prefactor: f64,
    pub one_plus_g: Option<f64>,
    pub scaled_f: f64,
    pub h_ratio: f64,
}

impl R3 {
    fn new(prefactor: f64, one_plus_g: Option<f64>, scaled_f: f64, h_ratio: f64) -> Self {
        let mut term = R3Term::ScaledF;
        let mut best = scaled_f;
        if h_ratio > best {
            term = R3Term::HRatio;
            best = h_ratio;
        }
        if let Some(g) = one_plus_g {
            if g >= best {
                term = R3Term::OnePlusG;
                best = g;
            }
        }
        R3 {
            value: prefactor * best,
            term,
            prefactor,
            one_plus_g,
            scaled_f,
            h_ratio,
        }
    }
}

/// δ-dependent part of a [`BoundReport`]; only defined when `⟨U⟩, ⟨V⟩ ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaReport {
    pub v_du: f64,
    pub v_dv: f64,
    pub s_du: f64,
    pub s_dv: f64,
    pub product: f64,
    /// `Cov(C_δU, C_δV)`
    pub x: f64,
    pub g: Option<f64>,
    pub f_over_f3: f64,
    pub h_over_f3: f64,
    pub r2: f64,
    pub r3: R3,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub v_u: f64,
    pub v_v: f64,
    pub f: f64,
    pub h: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    /// `V_U V_V - F - sin²(π/N) H`
    pub fh_slack: f64,
    pub r4: f64,
    pub delta: Option<DeltaReport>,
}

impl BoundReport {
    pub fn admissible(&self) -> bool {
        self.delta.is_some()
    }
}

/// `G(x; N) = 4 csc²(2π/N) x² + 2 sec²(π/N) x + tan²(π/N)`, `None` for `N = 2`.
pub fn g_function(pair: &SchwingerPair, x: f64) -> Option<f64> {
    let c = pair.cos_half();
    if c == 0.0 {
        return None;
    }
    let s2 = pair.sin_phi();
    let t = pair.sin_half() / c;
    Some(4.0 * x * x / (s2 * s2) + 2.0 * x / (c * c) + t * t)
}

/// `R4 = 1 + sin(2π/N)`.
pub fn compute_r4(n: usize) -> Result<f64> {
    Ok(1.0 + SchwingerPair::new(n)?.sin_phi())
}

fn csc2(pair: &SchwingerPair) -> f64 {
    1.0 / pair.sin_half().powi(2)
}

fn delta_report(pair: &SchwingerPair, m: &Moments, f: f64, h: f64) -> Result<DeltaReport> {
    m.admissible()?;
    let f3 = m.f3();
    if !(f3 > 0.0) {
        return Err(Error::VarianceAtOne);
    }
    let (v_du, v_dv) = m.delta_variances()?;
    let eps = pair.epsilon();
    let s_du = v_du / eps;
    let s_dv = v_dv / eps;
    let x = m.dressed_covariance_expansions()[0] / f3;
    let g = g_function(pair, x);
    let f_over_f3 = f / f3;
    let h_over_f3 = h / f3;
    let pre = 1.0 + pair.sin_phi();
    let scaled_f = csc2(pair) * f_over_f3;
    Ok(DeltaReport {
        v_du,
        v_dv,
        s_du,
        s_dv,
        product: s_du * s_dv,
        x,
        g,
        f_over_f3,
        h_over_f3,
        r2: pre * (scaled_f + h_over_f3),
        r3: R3::new(pre, g.map(|g| 1.0 + g), scaled_f, h_over_f3),
    })
}

/// All per-state quantities. Inadmissible states get `delta: None`.
pub fn bound_report(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<BoundReport> {
    let m = Moments::new(pair, rho)?;
    let fh = f_h_from_moments(&m)?;
    let f3 = m.f3();
    let delta = match delta_report(pair, &m, fh.f, fh.h) {
        Ok(d) => Some(d),
        Err(Error::VanishingMean { .. }) | Err(Error::VarianceAtOne) => None,
        Err(e) => return Err(e),
    };
    Ok(BoundReport {
        n: pair.dim(),
        v_u: m.v_u,
        v_v: m.v_v,
        f: fh.f,
        h: fh.h,
        f1: m.f1(),
        f2: m.f2(),
        f3,
        fh_slack: m.v_u * m.v_v - fh.f - pair.sin_half().powi(2) * fh.h,
        r4: 1.0 + pair.sin_phi(),
        delta,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassarSpindel {
    /// `(1 - ε²) V_U V_V`, i.e. `(1 + 2A) V_U V_V / (1 + A)²`.
    pub lhs: f64,
    /// `ε² (1 - V_U - V_V)`, i.e. `A² (1 - V_U - V_V) / (1 + A)²`.
    pub rhs: f64,
    pub satisfied: bool,
    /// `S_δU S_δV`, when the δ-operators exist.
    pub product: Option<f64>,
    pub product_satisfied: Option<bool>,
}

/// Zeroth-order bound in unscaled and scaled form.
pub fn massar_spindel_check(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<MassarSpindel> {
    check_dim(pair, rho)?;
    let mu = expectation(rho, pair.u())?;
    let mv = expectation(rho, pair.v())?;
    let vu = variance_from_mean(mu)?;
    let vv = variance_from_mean(mv)?;
    let e2 = pair.epsilon().powi(2);
    let lhs = (1.0 - e2) * vu * vv;
    let rhs = e2 * (1.0 - vu - vv);
    let product = if mu.norm() > tol::MEAN_CUTOFF && mv.norm() > tol::MEAN_CUTOFF {
        Some(delta_variance_from_mean(mu)? * delta_variance_from_mean(mv)? / e2)
    } else {
        None
    };
    Ok(MassarSpindel {
        lhs,
        rhs,
        satisfied: slack_ok(lhs, rhs),
        product,
        product_satisfied: product.map(|p| slack_ok(p, 1.0)),
    })
}

/// `(a - b)/scale(a, b) ≥ -SLACK`.
pub fn slack_ok(a: f64, b: f64) -> bool {
    relative_slack(a, b) >= -tol::SLACK
}

pub fn relative_slack(a: f64, b: f64) -> f64 {
    (a - b) / scale(a, b)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FH {
    pub f: f64,
    pub h: f64,
    /// Four-term `Σ |⟨X Y⟩|²`, kept for cross-checking.
    pub h_four_term: f64,
}

fn f_h_from_moments(m: &Moments) -> Result<FH> {
    let h = m.h_variances();
    let h4 = m.h_four_term();
    let r = rel_residual(h, h4);
    if r > tol::IDENTITY {
        return Err(Error::Inconsistent {
            what: "H",
            residual: r,
        });
    }
    Ok(FH {
        f: m.f(),
        h,
        h_four_term: h4,
    })
}

pub fn compute_f_h(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<FH> {
    f_h_from_moments(&Moments::new(pair, rho)?)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FDecomposition {
    pub f1: f64,
    pub f2: f64,
    /// `F₂` evaluated from the unitary moments.
    pub f2_unitary: f64,
    pub f3: f64,
    /// `(⟨C_U⟩² + ⟨S_U⟩²)(⟨C_V⟩² + ⟨S_V⟩²)`.
    pub f3_means: f64,
    pub f: f64,
}

pub fn decompose_f(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<FDecomposition> {
    let m = Moments::new(pair, rho)?;
    Ok(FDecomposition {
        f1: m.f1(),
        f2: m.f2(),
        f2_unitary: m.f2_from_unitaries(pair.omega()),
        f3: m.f3(),
        f3_means: m.f3_means(),
        f: m.f(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FHInequality {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
}

/// `V_U V_V ≥ F + sin²(π/N) H`.
pub fn fh_inequality_check(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<FHInequality> {
    let m = Moments::new(pair, rho)?;
    let fh = f_h_from_moments(&m)?;
    let lhs = m.v_u * m.v_v;
    let rhs = fh.f + pair.sin_half().powi(2) * fh.h;
    Ok(FHInequality {
        lhs,
        rhs,
        slack: lhs - rhs,
        satisfied: slack_ok(lhs, rhs),
    })
}

fn admissible_report(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<DeltaReport> {
    let m = Moments::new(pair, rho)?;
    let fh = f_h_from_moments(&m)?;
    delta_report(pair, &m, fh.f, fh.h)
}

/// `R2 = [1 + sin(2π/N)] [csc²(π/N) F/F₃ + H/F₃]`.
pub fn compute_r2(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<f64> {
    Ok(admissible_report(pair, rho)?.r2)
}

pub fn compute_r3(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<R3> {
    Ok(admissible_report(pair, rho)?.r3)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hierarchy {
    pub product: f64,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
    /// Relative slacks of `product ≥ R2`, `R2 ≥ R3`, `R3 ≥ R4`, `R4 ≥ 1`, `product ≥ R1`.
    pub slacks: [f64; 5],
    pub chain_ok: bool,
    /// `R2(ρ) > R1`; recorded, not treated as a violation.
    pub r2_above_r1: bool,
}

pub const HIERARCHY_LINKS: [&str; 5] = [
    "product_ge_r2",
    "r2_ge_r3",
    "r3_ge_r4",
    "r4_ge_1",
    "product_ge_r1",
];

pub fn hierarchy_from_report(d: &DeltaReport, r4: f64, r1: f64) -> Hierarchy {
    let slacks = [
        relative_slack(d.product, d.r2),
        relative_slack(d.r2, d.r3.value),
        relative_slack(d.r3.value, r4),
        relative_slack(r4, 1.0),
        relative_slack(d.product, r1),
    ];
    Hierarchy {
        product: d.product,
        r1,
        r2: d.r2,
        r3: d.r3.value,
        r4,
        slacks,
        chain_ok: slacks.iter().all(|&s| s >= -tol::SLACK),
        r2_above_r1: d.r2 > r1,
    }
}

/// Checks `product ≥ R2 ≥ R3 ≥ R4 ≥ 1` and `product ≥ R1`.
pub fn hierarchy_check(pair: &SchwingerPair, rho: &DensityMatrix, r1: f64) -> Result<Hierarchy> {
    let d = admissible_report(pair, rho)?;
    Ok(hierarchy_from_report(&d, 1.0 + pair.sin_phi(), r1))
}

/// A named residual or slack from one of the check suites.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub kind: CheckKind,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    /// `value` is a non-negative residual; passes when below the tolerance.
    Identity,
    /// `value` is a relative slack; passes when at least `-tolerance`.
    Inequality,
}

impl Check {
    fn identity(name: &'static str, a: f64, b: f64) -> Self {
        Check {
            name,
            kind: CheckKind::Identity,
            value: rel_residual(a, b),
        }
    }

    fn complex_identity(name: &'static str, a: C64, b: C64) -> Self {
        Check {
            name,
            kind: CheckKind::Identity,
            value: (a - b).norm() / 1f64.max(a.norm()).max(b.norm()),
        }
    }

    fn inequality(name: &'static str, a: f64, b: f64) -> Self {
        Check {
            name,
            kind: CheckKind::Inequality,
            value: relative_slack(a, b),
        }
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        match self.kind {
            CheckKind::Identity => self.value < tolerance,
            CheckKind::Inequality => self.value >= -tolerance,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeltaIdentities {
    pub checks: Vec<Check>,
    pub max_residual: f64,
}

fn dressed_direct(q: &DressedQuartet, rho: &DensityMatrix) -> Result<[f64; 4]> {
    Ok([
        q.covariance(rho, &q.c_du, &q.c_dv)?,
        q.covariance(rho, &q.c_du, &q.s_dv)?,
        q.covariance(rho, &q.s_du, &q.c_dv)?,
        q.covariance(rho, &q.s_du, &q.s_dv)?,
    ])
}

/// Dressed-covariance relations, each evaluated two independent ways.
pub fn delta_identities_check(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<DeltaIdentities> {
    let m = Moments::new(pair, rho)?;
    let fh = f_h_from_moments(&m)?;
    let q = dressed_quartet(pair, rho)?;
    let mut checks = Vec::new();
    delta_checks(pair, rho, &m, &fh, &q, &mut checks)?;
    let max_residual = checks.iter().map(|c| c.value).fold(0.0, f64::max);
    Ok(DeltaIdentities {
        checks,
        max_residual,
    })
}

fn delta_checks(
    pair: &SchwingerPair,
    rho: &DensityMatrix,
    m: &Moments,
    fh: &FH,
    q: &DressedQuartet,
    out: &mut Vec<Check>,
) -> Result<()> {
    const NAMES: [&str; 4] = [
        "dressed_covariance_cc",
        "dressed_covariance_cs",
        "dressed_covariance_sc",
        "dressed_covariance_ss",
    ];
    let f3 = m.f3();
    let direct = dressed_direct(q, rho)?;
    let expanded = m.dressed_covariance_expansions();
    for k in 0..4 {
        out.push(Check::identity(NAMES[k], f3 * direct[k], expanded[k]));
    }
    let sum_sq: f64 = direct.iter().map(|c| c * c).sum();
    out.push(Check::identity("f_over_f3_dressed", fh.f / f3, sum_sq));

    let (v_du, v_dv) = m.delta_variances()?;
    let vu_parts = variance(rho, &q.c_du)? + variance(rho, &q.s_du)?;
    let vv_parts = variance(rho, &q.c_dv)? + variance(rho, &q.s_dv)?;
    out.push(Check::identity("delta_variance_product", v_du * v_dv, vu_parts * vv_parts));

    let x = direct[0];
    let c2 = pair.cos_half().powi(2);
    out.push(Check::identity(
        "h_over_f3",
        c2 * fh.h / f3,
        1.0 + 2.0 * x + fh.f / f3,
    ));
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossMomentBounds {
    /// `|⟨C_U C_V⟩|², |⟨C_U S_V⟩|², |⟨S_U C_V⟩|², |⟨S_U S_V⟩|²`
    pub elements: [f64; 4],
    pub quarter_h: f64,
    /// Largest element `≥ ¼H`.
    pub max_ok: bool,
    /// Every element `≥ ¼H` (informational).
    pub all_ok: bool,
    /// `⟨S_U⟩ = ⟨S_V⟩ = 0` and `⟨C_U⟩, ⟨C_V⟩ ≥ 0` to tolerance.
    pub applies: bool,
    /// `|⟨C_U C_V⟩|`
    pub lhs: f64,
    /// `√((1 - V_U)(1 - V_V)) - √(V_U V_V)`
    pub rhs: f64,
    pub restricted_ok: Option<bool>,
}

pub fn cross_moment_bounds(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<CrossMomentBounds> {
    let m = Moments::new(pair, rho)?;
    let elements = [
        m.cross[0][0].norm_sqr(),
        m.cross[0][1].norm_sqr(),
        m.cross[1][0].norm_sqr(),
        m.cross[1][1].norm_sqr(),
    ];
    let quarter_h = 0.25 * m.h_four_term();
    let tol_abs = tol::SLACK;
    let max_el = elements.iter().cloned().fold(0.0, f64::max);
    let pc = tol::PHASE_CONDITION;
    let applies =
        m.mu[1].abs() <= pc && m.mv[1].abs() <= pc && m.mu[0] >= -pc && m.mv[0] >= -pc;
    let lhs = m.cross[0][0].norm();
    let rhs = ((1.0 - m.v_u) * (1.0 - m.v_v)).sqrt() - (m.v_u * m.v_v).sqrt();
    Ok(CrossMomentBounds {
        elements,
        quarter_h,
        max_ok: max_el - quarter_h >= -tol_abs,
        all_ok: elements.iter().all(|&e| e - quarter_h >= -tol_abs),
        applies,
        lhs,
        rhs,
        restricted_ok: if applies {
            Some(lhs - rhs >= -tol_abs)
        } else {
            None
        },
    })
}

/// Every identity and inequality that can be evaluated on `rho`.
///
/// δ-dependent checks are included only for admissible states; relations
/// carrying a factor `A = tan(π/N)` are skipped for `N = 2`.
pub fn identity_suite(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<Vec<Check>> {
    let m = Moments::new(pair, rho)?;
    let fh = f_h_from_moments(&m)?;
    let t = pair.trig();
    let mut out = Vec::with_capacity(48);
    let finite_a = pair.cos_half() != 0.0;
    let a = pair.a();

    // Trig quartet primitives.
    let quartet_names = [
        ("rs_cc", "moment_identity_cc", "trig_commutator_cc", "cauchy_schwarz_cc"),
        ("rs_cs", "moment_identity_cs", "trig_commutator_cs", "cauchy_schwarz_cs"),
        ("rs_sc", "moment_identity_sc", "trig_commutator_sc", "cauchy_schwarz_sc"),
        ("rs_ss", "moment_identity_ss", "trig_commutator_ss", "cauchy_schwarz_ss"),
    ];
    // [C_U,C_V] = iA{S_U,S_V}, [C_U,S_V] = -iA{S_U,C_V},
    // [S_U,C_V] = -iA{C_U,S_V}, [S_U,S_V] = iA{C_U,C_V}
    let partners = [(1, 1, 1.0), (1, 0, -1.0), (0, 1, -1.0), (0, 0, 1.0)];
    let xs = t.u_side();
    let ys = t.v_side();
    for k in 0..4 {
        let (i, j) = (k / 2, k % 2);
        let (xa, yb) = (xs[i], ys[j]);
        let va = variance(rho, xa)?;
        let vb = variance(rho, yb)?;
        let c = covariance(rho, xa, yb)?;
        let ab = m.cross[i][j];
        let comm = rho.expect(&xa.commutator(yb)?)?;
        let anti = rho.expect(&xa.anticommutator(yb)?)?;
        out.push(Check::inequality(
            quartet_names[k].0,
            va * vb,
            c * c + 0.25 * comm.norm_sqr(),
        ));
        out.push(Check::identity(
            quartet_names[k].1,
            comm.norm_sqr() + anti.norm_sqr(),
            4.0 * ab.norm_sqr(),
        ));
        if finite_a {
            let (pi, pj, sign) = partners[k];
            let other = rho.expect(&xs[pi].anticommutator(ys[pj])?)?;
            out.push(Check::complex_identity(
                quartet_names[k].2,
                comm,
                I * other * (sign * a),
            ));
        }
        out.push(Check::inequality(quartet_names[k].3, (va * vb).sqrt(), c.abs()));
    }

    out.push(Check::identity("h_four_term", fh.h_four_term, fh.h));
    out.push(Check::identity(
        "h_cross_moments",
        fh.h_four_term,
        0.5 * (m.uv.norm_sqr() + m.uvd.norm_sqr()),
    ));
    let f1 = m.f1();
    let f2 = m.f2();
    let f3 = m.f3();
    out.push(Check::identity("f1_cos2_h", f1, pair.cos_half().powi(2) * fh.h));
    out.push(Check::identity("f2_unitary_form", f2, m.f2_from_unitaries(pair.omega())));
    out.push(Check::identity("f3_means", m.f3_means(), f3));
    out.push(Check::identity("f3_variances", m.f3_variances(), f3));
    out.push(Check::identity("f_decomposition", fh.f, f1 - f2 + f3));

    let vc = variance(rho, &t.c_u)? + variance(rho, &t.s_u)?;
    let vs = variance(rho, &t.c_v)? + variance(rho, &t.s_v)?;
    out.push(Check::identity("variance_product", vc * vs, m.v_u * m.v_v));
    let mean_u2 = m.mu[0].powi(2) + m.mu[1].powi(2);
    let mean_v2 = m.mv[0].powi(2) + m.mv[1].powi(2);
    out.push(Check::identity("mean_product", mean_u2 * mean_v2, f3));
    let vv_u = complex_covariance(rho, pair.u(), &pair.u().adjoint())?;
    out.push(Check::identity("normal_variance_u", vc, vv_u.re));

    let s2 = pair.sin_half().powi(2);
    let slack = m.v_u * m.v_v - fh.f - s2 * fh.h;
    out.push(Check::inequality("fh_inequality", m.v_u * m.v_v, fh.f + s2 * fh.h));
    if finite_a {
        let w = 1.0 + a * a;
        out.push(Check::identity(
            "weighted_fh_form",
            w * m.v_u * m.v_v - w * fh.f - a * a * fh.h,
            w * slack,
        ));
    }
    let ms = massar_spindel_check(pair, rho)?;
    out.push(Check::inequality("massar_spindel", ms.lhs, ms.rhs));
    let cm = cross_moment_bounds(pair, rho)?;
    out.push(Check::inequality(
        "cross_moment_max",
        cm.elements.iter().cloned().fold(0.0, f64::max),
        cm.quarter_h,
    ));
    if cm.applies {
        out.push(Check::inequality("cross_moment_restricted", cm.lhs, cm.rhs));
    }

    if m.admissible().is_err() || !(f3 > 0.0) {
        return Ok(out);
    }
    let q = dressed_quartet(pair, rho)?;
    let (v_du, v_dv) = m.delta_variances()?;
    let via_u = complex_covariance(rho, &q.delta_u, &q.delta_u.adjoint())?;
    let via_v = complex_covariance(rho, &q.delta_v, &q.delta_v.adjoint())?;
    out.push(Check::identity("delta_variance_u", via_u.re, v_du));
    out.push(Check::identity("delta_variance_v", via_v.re, v_dv));
    let vparts_u = variance(rho, &q.c_du)? + variance(rho, &q.s_du)?;
    let vparts_v = variance(rho, &q.c_dv)? + variance(rho, &q.s_dv)?;
    out.push(Check::identity("normal_variance_delta_u", vparts_u, via_u.re));
    out.push(Check::identity("normal_variance_delta_v", vparts_v, via_v.re));
    out.push(Check::identity("unscaled_variance_product", m.v_u * m.v_v, f3 * v_du * v_dv));

    delta_checks(pair, rho, &m, &fh, &q, &mut out)?;

    if finite_a {
        let direct = dressed_direct(&q, rho)?;
        let two_ia = I * (2.0 * a);
        let rels: [(&str, &CMatrix, &CMatrix, C64); 4] = [
            ("delta_commutator_cc", &q.c_du, &q.c_dv, two_ia * direct[3]),
            ("delta_commutator_cs", &q.c_du, &q.s_dv, -two_ia * direct[2]),
            ("delta_commutator_sc", &q.s_du, &q.c_dv, -two_ia * direct[1]),
            ("delta_commutator_ss", &q.s_du, &q.s_dv, two_ia * (direct[0] + 1.0)),
        ];
        for (name, p, r, want) in rels {
            let got = q.expect(rho, &p.commutator(r)?)?;
            out.push(Check::complex_identity(name, got, want));
        }
    }

    let d = delta_report(pair, &m, fh.f, fh.h)?;
    out.push(Check::identity(
        "product_scaling",
        d.product,
        v_du * v_dv / pair.epsilon().powi(2),
    ));
    out.push(Check::inequality(
        "delta_fh_inequality",
        v_du * v_dv,
        d.f_over_f3 + s2 * d.h_over_f3,
    ));
    let r3 = &d.r3;
    let args_max = r3
        .one_plus_g
        .unwrap_or(f64::NEG_INFINITY)
        .max(r3.scaled_f)
        .max(r3.h_ratio);
    out.push(Check {
        name: "r3_argmax",
        kind: CheckKind::Identity,
        value: if r3.prefactor * args_max == r3.value {
            0.0
        } else {
            f64::INFINITY
        },
    });
    let h = hierarchy_from_report(&d, 1.0 + pair.sin_phi(), 1.0);
    for (k, name) in HIERARCHY_LINKS.iter().take(4).enumerate() {
        out.push(Check {
            name,
            kind: CheckKind::Inequality,
            value: h.slacks[k],
        });
    }
    Ok(out)
}
