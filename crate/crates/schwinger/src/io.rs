//! File formats: CSV with a header row, JSON with stable key order, and
//! density matrices as nested `[re, im]` arrays.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use schwinger_core::{CMatrix, DensityMatrix, C64};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let f = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(BufWriter::new(f))
}

/// `out/cloud.csv` → `out/cloud.<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

pub fn csv_writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    Ok(csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(create(path)?))
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv_writer(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn c64_pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

/// Reads an `N×N` matrix of `[re, im]` pairs and validates it as a state.
pub fn load_state(path: &Path) -> Result<DensityMatrix> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading state {}", path.display()))?;
    parse_state(&text).with_context(|| format!("invalid state in {}", path.display()))
}

pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_str(text)?;
    let n = rows.len();
    if n == 0 {
        bail!("empty matrix");
    }
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            bail!("row {i} has {} entries, expected {n}", row.len());
        }
        data.extend(row.iter().map(|&[re, im]| C64::new(re, im)));
    }
    Ok(DensityMatrix::new(CMatrix::from_vec(n, n, data)?)?)
}

pub fn state_to_json(rho: &DensityMatrix) -> Vec<Vec<[f64; 2]>> {
    let m = rho.matrix();
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| c64_pair(m.get(i, j))).collect())
        .collect()
}
