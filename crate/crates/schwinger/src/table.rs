//! Bounds `R1..R4` on the Harper ground state for `N = 2..6`, computed once from
//! the numerical eigenvector and once from the closed-form amplitudes.

use std::path::PathBuf;

use anyhow::{anyhow, Result};
use serde::{Deserialize, Serialize};

use schwinger_core::bounds::bound_report;
use schwinger_core::harper::{closed_form, ground_state};
use schwinger_core::{DensityMatrix, SchwingerPair, C64};

use crate::io::{self, Format};

pub const TABLE_DIMS: std::ops::RangeInclusive<usize> = 2..=6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Config {
    pub out: Option<PathBuf>,
    pub format: Format,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: usize,
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
    pub r4: f64,
    pub r3_term: String,
    pub r1_closed: f64,
    pub r2_closed: f64,
    pub r3_closed: f64,
    pub r4_closed: f64,
    /// Largest `|numerical - closed form|` over the four bounds.
    pub max_deviation: f64,
}

pub const TABLE1_COLUMNS: [&str; 11] = [
    "n", "r1", "r2", "r3", "r4", "r3_term", "r1_closed", "r2_closed", "r3_closed", "r4_closed",
    "max_deviation",
];

fn r234(pair: &SchwingerPair, rho: &DensityMatrix) -> Result<(f64, f64, f64, String)> {
    let rep = bound_report(pair, rho)?;
    let d = rep
        .delta
        .ok_or_else(|| anyhow!("ground state at N={} is not admissible", pair.dim()))?;
    Ok((d.r2, d.r3.value, rep.r4, d.r3.term.as_str().to_owned()))
}

pub fn table1_row(n: usize) -> Result<Table1Row> {
    let pair = SchwingerPair::new(n)?;
    let gs = ground_state(n)?;
    let (r2, r3, r4, term) = r234(&pair, &gs.density())?;
    let cf = closed_form(n)?;
    let amps: Vec<C64> = cf.coefficients.iter().map(|&c| C64::new(c, 0.0)).collect();
    let (r2c, r3c, r4c, _) = r234(&pair, &DensityMatrix::from_state_vector(&amps)?)?;
    let r1c = cf.expected_r1();
    let max_deviation = [(gs.r1, r1c), (r2, r2c), (r3, r3c), (r4, r4c)]
        .iter()
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(Table1Row {
        n,
        r1: gs.r1,
        r2,
        r3,
        r4,
        r3_term: term,
        r1_closed: r1c,
        r2_closed: r2c,
        r3_closed: r3c,
        r4_closed: r4c,
        max_deviation,
    })
}

pub fn table1() -> Result<Vec<Table1Row>> {
    TABLE_DIMS.map(table1_row).collect()
}

pub fn write_table1(cfg: &Table1Config, rows: &[Table1Row]) -> Result<Vec<PathBuf>> {
    let Some(out) = &cfg.out else {
        return Ok(vec![]);
    };
    match cfg.format {
        Format::Csv => io::write_csv(out, rows)?,
        Format::Json => io::write_json(
            out,
            &serde_json::json!({
                "schema_version": crate::SCHEMA_VERSION,
                "kind": "table1",
                "rows": rows,
            }),
        )?,
    }
    Ok(vec![out.clone()])
}

pub fn render(rows: &[Table1Row]) -> String {
    let mut s = String::from(" N        R1        R2        R3        R4  R3 term     closed dev\n");
    for r in rows {
        s.push_str(&format!(
            "{:>2} {:>9.5} {:>9.5} {:>9.5} {:>9.5}  {:<10} {:>9.2e}\n",
            r.n, r.r1, r.r2, r.r3, r.r4, r.r3_term, r.max_deviation
        ));
    }
    s
}
