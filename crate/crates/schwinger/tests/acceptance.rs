//! Acceptance criteria, one status line each.
//!
//! Criterion 8 runs 10⁴ samples per dimension by default; set
//! `SCHWINGER_FULL_SCALE=1` for 10⁶.

use std::f64::consts::FRAC_PI_4;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use schwinger::cloud::{summarize, CloudConfig};
use schwinger::io::Format;
use schwinger::job::Job;
use schwinger::table::table1;
use schwinger::verify::{run_verify, Kind, Suite, VerifyConfig, VerifyReport};
use schwinger_core::harper::{closed_form, fourier_commutation_check, ground_state, theta_scan};
use schwinger_core::sampling::Ensemble;

enum Status {
    Pass,
    Fail,
    /// Soft criterion that missed; reported but not fatal.
    Warn,
}

struct Outcome {
    status: Status,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(ok: bool, summary: String, details: Vec<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Outcome { status, summary, details }
    }
}

fn archive_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance")
}

fn elapsed_ok(t: Instant, limit: Duration, details: &mut Vec<String>) -> bool {
    let e = t.elapsed();
    details.push(format!("runtime {:.3}s (limit {}s)", e.as_secs_f64(), limit.as_secs()));
    e < limit
}

/// Harper ground-state bound table against its published values.
fn criterion_1() -> Outcome {
    const EXPECTED: [(usize, [f64; 4]); 5] = [
        (2, [1.0, 1.0, 1.0, 1.0]),
        (3, [3.254, 2.182, 1.895, 1.866]),
        (4, [4.0, 3.0, 2.0, 2.0]),
        (5, [3.781, 3.469, 2.987, 1.951]),
        (6, [3.348, 1.915, 1.915, 1.866]),
    ];
    let t = Instant::now();
    let mut details = vec![];
    let mut ok = true;
    match table1() {
        Ok(rows) => {
            for (row, (n, want)) in rows.iter().zip(EXPECTED) {
                let got = [row.r1, row.r2, row.r3, row.r4];
                for (k, (g, w)) in got.iter().zip(want).enumerate() {
                    let dev = (g - w).abs();
                    if !(dev <= 5e-3) {
                        ok = false;
                        details.push(format!("N={n} R{}: computed {g:.5}, expected {w} (off by {dev:.4})", k + 1));
                    }
                }
            }
        }
        Err(e) => {
            ok = false;
            details.push(format!("error: {e:#}"));
        }
    }
    let fast = elapsed_ok(t, Duration::from_secs(1), &mut details);
    let bad = details.len() - 1;
    Outcome::new(ok && fast, format!("ground-state bound table R1..R4, N=2..6, within 5e-3 ({bad} cells off)"), details)
}

/// Numerical eigen path against radicals.
fn criterion_2() -> Outcome {
    let s3 = 3f64.sqrt();
    let mut details = vec![];
    let mut ok = true;
    let mut cmp = |what: &str, got: f64, want: f64, tol: f64| {
        let d = (got - want).abs();
        let pass = d <= tol;
        ok &= pass;
        details.push(format!("{what}: {got:.12} vs {want:.12} (|Δ| = {d:.1e}){}", if pass { "" } else { "  FAIL" }));
    };
    match (ground_state(3), ground_state(5), ground_state(6), closed_form(5)) {
        (Ok(g3), Ok(g5), Ok(g6), Ok(c5)) => {
            cmp("R1(3) = 76 - 42√3", g3.r1, 76.0 - 42.0 * s3, 1e-9);
            cmp("S0(3) = 7 - 3√3", g3.s0, 7.0 - 3.0 * s3, 1e-9);
            cmp("V_δU(3) = 15 - 8√3", g3.v0_du, 15.0 - 8.0 * s3, 1e-9);
            cmp("S0(5) closed form", g5.s0, c5.expected_s0, 1e-9);
            cmp("S0(5) ≈ 1.9444", g5.s0, 1.9444, 5e-5);
            let s6 = 19.0 * (1.0 + s3) - 4.0 * (42.0 * (2.0 + s3)).sqrt();
            cmp("S0(6) = 19(1+√3) - 4√(42(2+√3))", g6.s0, s6, 1e-9);
        }
        _ => {
            ok = false;
            details.push("ground state computation failed".into());
        }
    }
    Outcome::new(ok, "closed-form radicals reproduced by the eigen path to 1e-9".into(), details)
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut details = vec![];
    let mut ok = true;
    let (mut dv, mut df, mut dc, mut dt): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    for n in 2..=12 {
        let (Ok(g), Ok(f), Ok(s)) = (ground_state(n), fourier_commutation_check(n), theta_scan(n, 101)) else {
            ok = false;
            details.push(format!("N={n}: computation failed"));
            continue;
        };
        let v = (g.v0_du - g.v0_dv).abs();
        let fe = (f.f0 - 1.0).norm();
        let te = (s.theta_star - FRAC_PI_4).abs();
        dv = dv.max(v);
        df = df.max(fe);
        dc = dc.max(f.comm_norm);
        dt = dt.max(te);
        if !(v <= 1e-9 && fe <= 1e-9 && f.comm_norm < 1e-10 && te <= 1e-3) {
            ok = false;
            details.push(format!("N={n}: |V_δU-V_δV|={v:.1e} |f0-1|={fe:.1e} comm={:.1e} |θ*-π/4|={te:.1e}", f.comm_norm));
        }
    }
    details.push(format!(
        "max |V_δU - V_δV| = {dv:.1e}, max |f0 - 1| = {df:.1e}, max ‖[H,F]‖ = {dc:.1e}, max |θ* - π/4| = {dt:.1e}"
    ));
    let fast = elapsed_ok(t, Duration::from_secs(10), &mut details);
    Outcome::new(ok && fast, "ground-state symmetry, Fourier parity and θ-scan for N=2..12".into(), details)
}

/// Enough samples from `seed` to leave `want` admissible ones.
fn admissible_cloud(dim: usize, ensemble: Ensemble, want: u64, seed: u64) -> anyhow::Result<schwinger::cloud::CloudSummary> {
    let mut samples = want;
    loop {
        let cfg = CloudConfig { dim, samples, ensemble, seed, out: PathBuf::new(), format: Format::Csv };
        let s = summarize(&cfg)?;
        if s.admitted >= want {
            return Ok(s);
        }
        samples += want - s.admitted;
    }
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let mut details = vec![];
    let mut ok = true;
    for ensemble in [Ensemble::PureHaar, Ensemble::MixedHs] {
        for n in 2..=8 {
            let s = match admissible_cloud(n, ensemble, 10_000, 4000 + n as u64) {
                Ok(s) => s,
                Err(e) => {
                    ok = false;
                    details.push(format!("{ensemble} N={n}: {e:#}"));
                    continue;
                }
            };
            let min_p = s.min_product.unwrap_or(f64::NAN);
            let worst = s.hierarchy.iter().filter_map(|l| l.min_slack).fold(f64::INFINITY, f64::min);
            let mut pass = s.hierarchy_ok && worst >= -1e-9 && min_p >= s.r1 - 1e-9;
            if (3..=6).contains(&n) {
                pass &= s.r1 > 1.5 && min_p > 1.0;
            }
            ok &= pass;
            details.push(format!(
                "{ensemble} N={n}: {} admissible states, min S_dU*S_dV = {min_p:.6}, R1 = {:.6}, worst slack {worst:.1e}{}",
                s.admitted,
                s.r1,
                if pass { "" } else { "  FAIL" }
            ));
        }
    }
    let fast = elapsed_ok(t, Duration::from_secs(120), &mut details);
    Outcome::new(ok && fast, "bound hierarchy on 10⁴ admissible random states per N=2..8".into(), details)
}

fn sweep(dim: usize, samples: u64, seed: u64, ensemble: Ensemble, suite: Suite) -> anyhow::Result<VerifyReport> {
    run_verify(&VerifyConfig { dim, samples, seed, ensemble, suite, out: None })
}

fn worst_residual(r: &VerifyReport) -> f64 {
    r.checks.iter().filter(|c| c.kind == Kind::Identity).map(|c| c.worst).fold(0.0, f64::max)
}

fn criterion_5() -> Outcome {
    let mut details = vec![];
    let mut ok = true;
    for ensemble in [Ensemble::PureHaar, Ensemble::MixedHs] {
        for n in 2..=8 {
            match sweep(n, 10_000, 5000 + n as u64, ensemble, Suite::Identities) {
                Ok(r) => {
                    let w = worst_residual(&r);
                    let pass = r.passed && w < 1e-9;
                    ok &= pass;
                    let at = r.first_failure.as_ref().map(|f| format!("  FAIL {} at index {:?}", f.check, f.index));
                    details.push(format!("{ensemble} N={n}: {} checks, max residual {w:.2e}{}", r.checks.len(), at.unwrap_or_default()));
                }
                Err(e) => {
                    ok = false;
                    details.push(format!("{ensemble} N={n}: {e:#}"));
                }
            }
        }
    }
    Outcome::new(ok, "identity suite, max residual < 1e-9 over 10⁴ states per N=2..8".into(), details)
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let mut details = vec![];
    let mut ok = true;
    for n in [3, 5, 7, 9] {
        match sweep(n, 100, 6000 + n as u64, Ensemble::MixedHs, Suite::Weyl) {
            Ok(r) => {
                let pick = |name: &str| r.checks.iter().find(|c| c.name == name).map_or(f64::NAN, |c| c.worst);
                ok &= r.passed;
                details.push(format!(
                    "N={n}: orthogonality {:.1e}, reconstruction {:.1e}, moments {:.1e}, trig products {:.1e}, triangle slack {:.1e}, Cauchy-Schwarz slack {:.1e}{}",
                    pick("phase_point_orthogonality"),
                    pick("operator_reconstruction"),
                    pick("uv_moments"),
                    pick("trig_products"),
                    pick("triangle_bounds"),
                    pick("cauchy_schwarz"),
                    if r.passed { "" } else { "  FAIL" }
                ));
            }
            Err(e) => {
                ok = false;
                details.push(format!("N={n}: {e:#}"));
            }
        }
    }
    let fast = elapsed_ok(t, Duration::from_secs(60), &mut details);
    Outcome::new(ok && fast, "phase-space basis, reconstruction, moments and bounds for odd N=3..9".into(), details)
}

/// Soft: the dominance split depends on the ensemble.
fn criterion_7() -> Outcome {
    let dir = archive_dir();
    let mut details = vec![];
    let mut ok = true;
    let frac = |n: usize| -> Result<(f64, f64), String> {
        let out = dir.join(format!("dominance_n{n}.csv"));
        let job = Job::Cloud(CloudConfig { dim: n, samples: 10_000, ensemble: Ensemble::PureHaar, seed: 7000 + n as u64, out, format: Format::Csv });
        let o = job.run(None).map_err(|e| format!("{e:#}"))?;
        let path = o.manifest.ok_or("no manifest written")?;
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let m: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let d = &m["notes"]["dominance"];
        d["h_gt_f"].as_f64().zip(d["scaled_f_gt_h"].as_f64()).ok_or_else(|| "dominance missing from manifest".into())
    };
    for (n, check_h, side) in [(3, false, Some(false)), (4, true, None), (5, true, None), (20, false, Some(true))] {
        let (h, f) = match frac(n) {
            Ok(v) => v,
            Err(e) => {
                ok = false;
                details.push(format!("N={n}: {e}"));
                continue;
            }
        };
        let mut pass = true;
        if check_h {
            pass &= h > 0.5;
        }
        match side {
            Some(true) => pass &= f > 0.5,
            Some(false) => pass &= f < 0.5,
            None => {}
        }
        ok &= pass;
        details.push(format!("N={n}: H > F in {h:.4}, csc²F/F3 > H/F3 in {f:.4}{}", if pass { "" } else { "  missed" }));
    }
    details.push(format!("manifests archived in {}", dir.display()));
    let summary = "dominance fractions on 10⁴ pure-haar states (soft)".to_owned();
    Outcome { status: if ok { Status::Pass } else { Status::Warn }, summary, details }
}

fn criterion_8() -> Outcome {
    let full = std::env::var_os("SCHWINGER_FULL_SCALE").is_some_and(|v| v != "0");
    let samples = if full { 1_000_000 } else { 10_000 };
    let t = Instant::now();
    let mut details = vec![];
    let mut ok = true;
    for n in 2..=6 {
        let cfg = CloudConfig { dim: n, samples, ensemble: Ensemble::PureHaar, seed: 8000 + n as u64, out: PathBuf::new(), format: Format::Csv };
        match summarize(&cfg) {
            Ok(s) => {
                let m = s.min_product.unwrap_or(f64::NAN);
                let pass = if n == 2 { (m - 1.0).abs() <= 1e-6 } else { m >= s.r1 - 1e-9 } && s.hierarchy_ok;
                ok &= pass;
                details.push(format!("N={n}: min S_dU*S_dV = {m:.9} (R1 = {:.6}){}", s.r1, if pass { "" } else { "  FAIL" }));
            }
            Err(e) => {
                ok = false;
                details.push(format!("N={n}: {e:#}"));
            }
        }
    }
    details.push(format!("{samples} samples per N, {:.2}s", t.elapsed().as_secs_f64()));
    let scale = if full { "full scale 10⁶" } else { "desk scale 10⁴; SCHWINGER_FULL_SCALE=1 for 10⁶" };
    Outcome::new(ok, format!("random-state clouds ({scale}), saturation at N=2"), details)
}

fn main() -> ExitCode {
    let criteria: [fn() -> Outcome; 8] = [
        criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8,
    ];
    let mut failed = vec![];
    println!("acceptance criteria");
    for (k, c) in criteria.iter().enumerate() {
        let o = c();
        let tag = match o.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed.push(k + 1);
                "FAIL"
            }
            Status::Warn => "WARN",
        };
        println!("[{tag}] criterion {}: {}", k + 1, o.summary);
        for d in &o.details {
            println!("         {d}");
        }
    }
    if failed.is_empty() {
        println!("all hard criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
