//! `cvm phase-diagram`: classify every parameter pair up to `F-max`.

use crate::csvout::{CsvWriter, Field};
use crate::manifest::Manifest;
use crate::runconfig::canonical_text;
use anyhow::{bail, Result};
use cvm::analytics::phase_diagram;
use cvm::rational::to_f64;
use std::collections::BTreeMap;
use std::path::Path;

pub fn run(map: BTreeMap<String, String>, dir: &Path, f_max: u32) -> Result<()> {
    if f_max < 2 {
        bail!("--F-max must be at least 2");
    }
    crate::ensure_outdir(dir)?;
    let cells = phase_diagram(f_max);
    let mut csv = CsvWriter::create(
        &dir.join("phase_diagram.csv"),
        &["F", "theta", "classification", "margin", "margin_decimal"],
    )?;
    for cell in &cells {
        csv.row(&[
            Field::UInt(u64::from(cell.f)),
            Field::UInt(u64::from(cell.theta)),
            Field::Str(&cell.class.to_string()),
            Field::Rational(&cell.margin),
            Field::Float(to_f64(&cell.margin)),
        ])?;
    }
    csv.finish()?;
    let mut manifest = Manifest::new("phase-diagram", canonical_text(&map), None);
    manifest.add_artifact("phase_diagram.csv");
    manifest.write(dir)?;
    println!(
        "phase-diagram: {} cells -> {}",
        cells.len(),
        dir.join("phase_diagram.csv").display()
    );
    Ok(())
}
