//! `schwinger` command-line entry point.
//!
//! Exit codes: 0 when every check passes, 1 on an invariant violation,
//! 2 on usage or I/O errors.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use schwinger::cloud::CloudConfig;
use schwinger::config::{
    parse_ensemble, require_dim, resolve_samples, resolve_seed, seed_from_env, ConfigFile, SeedSource,
};
use schwinger::harper_report::HarperConfig;
use schwinger::io::Format;
use schwinger::job::{rerun, Job, Outcome};
use schwinger::table::Table1Config;
use schwinger::verify::{Suite, VerifyConfig};
use schwinger::weyl_report::{StateSource, WeylConfig};
use schwinger_core::sampling::Ensemble;

#[derive(Parser)]
#[command(name = "schwinger", version, about = "Uncertainty bounds for Schwinger clock/shift pairs")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SamplerFlags {
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    samples: Option<u64>,
    /// pure-haar or mixed-hs
    #[arg(long)]
    ensemble: Option<String>,
    /// Overrides SCHWINGER_SEED and the config file.
    #[arg(long)]
    seed: Option<u64>,
    /// JSON file with any of dim, samples, ensemble, seed.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Scaled δ-variances and bounds for random states.
    Cloud {
        #[command(flatten)]
        sampler: SamplerFlags,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// R1..R4 on the Harper ground state for N = 2..6, numerical and closed form.
    Table1 {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Identity, hierarchy and phase-space sweeps over random states.
    Verify {
        #[command(flatten)]
        sampler: SamplerFlags,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Harper ground state, Fourier parity and optional θ scan.
    Harper {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        theta_scan: bool,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weyl/Wigner grids and reconstruction residuals for one state (odd N).
    Weyl {
        #[arg(long)]
        dim: usize,
        /// N×N matrix of [re, im] pairs; otherwise a sampled state is used.
        #[arg(long, conflicts_with_all = ["seed", "index", "ensemble"])]
        state: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 0)]
        index: u64,
        #[arg(long)]
        ensemble: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repeat a run from its manifest.
    Rerun {
        #[arg(long)]
        manifest: PathBuf,
        /// Write the primary output here instead of the recorded path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Resolved {
    dim: usize,
    samples: u64,
    ensemble: Ensemble,
    seed: u64,
    source: SeedSource,
}

fn resolve(f: &SamplerFlags, min_dim: usize) -> Result<Resolved> {
    let file = ConfigFile::load_opt(f.config.as_deref())?;
    let env = seed_from_env();
    let (seed, source) = resolve_seed(f.seed, env.as_deref(), file.seed)?;
    let ensemble = match &f.ensemble {
        Some(e) => parse_ensemble(e)?,
        None => file.ensemble()?.unwrap_or_default(),
    };
    Ok(Resolved {
        dim: require_dim(f.dim, &file, min_dim)?,
        samples: resolve_samples(f.samples, &file)?,
        ensemble,
        seed,
        source,
    })
}

fn dispatch(cmd: Command) -> Result<Outcome> {
    let (job, source) = match cmd {
        Command::Cloud { sampler, out, format } => {
            let r = resolve(&sampler, 2)?;
            let c = CloudConfig { dim: r.dim, samples: r.samples, ensemble: r.ensemble, seed: r.seed, out, format };
            (Job::Cloud(c), Some(r.source))
        }
        Command::Table1 { out, format } => (Job::Table1(Table1Config { out, format }), None),
        Command::Verify { sampler, suite, out } => {
            let r = resolve(&sampler, 2)?;
            let c = VerifyConfig { dim: r.dim, samples: r.samples, seed: r.seed, ensemble: r.ensemble, suite, out };
            (Job::Verify(c), Some(r.source))
        }
        Command::Harper { dim, theta_scan, grid, out } => {
            anyhow::ensure!(dim >= 2, "--dim must be at least 2 (got {dim})");
            (Job::Harper(HarperConfig { dim, theta_scan, grid, out }), None)
        }
        Command::Weyl { dim, state, seed, index, ensemble, out } => match state {
            Some(path) => (Job::Weyl(WeylConfig { dim, source: StateSource::File { path }, out }), None),
            None => {
                let env = seed_from_env();
                let (seed, src) = resolve_seed(seed, env.as_deref(), None)?;
                let ensemble = ensemble.as_deref().map(parse_ensemble).transpose()?.unwrap_or_default();
                let source = StateSource::Sampled { ensemble, seed, index };
                (Job::Weyl(WeylConfig { dim, source, out }), Some(src))
            }
        },
        Command::Rerun { manifest, out } => return rerun(&manifest, out),
    };
    job.run(source)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(cli.command) {
        Ok(o) => {
            print!("{}", o.text);
            for p in &o.outputs {
                println!("wrote {}", p.display());
            }
            if let Some(m) = &o.manifest {
                println!("wrote {}", m.display());
            }
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
