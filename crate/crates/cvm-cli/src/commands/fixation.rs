//! `cvm fixation`: blockade persistence and the flip-count stabilization
//! proxy on the torus.
//!
//! Fixation proper is an infinite-time statement; the finite-size proxy
//! reported here (median per-site flips across growing horizons) is this
//! toolkit's construction and is labeled as such in the output schema.

use crate::commands::cluster::{observation_times, write_density_csv};
use crate::csvout::{CsvWriter, Field};
use crate::manifest::Manifest;
use crate::runconfig::RunConfig;
use anyhow::{bail, Result};
use cvm::estimators::{estimate_particle_density, flip_count_medians};
use cvm::Topology;
use std::collections::BTreeMap;
use std::path::Path;

pub fn run(map: BTreeMap<String, String>, dir: &Path) -> Result<()> {
    let cfg = RunConfig::resolve(map)?;
    if cfg.topology != Topology::Cycle {
        bail!("fixation proxies require graph.topology = cycle");
    }
    let Some(t_max) = cfg.t_max else {
        bail!("fixation proxies need run.t-max");
    };
    let times = observation_times(&cfg)?;
    crate::ensure_outdir(dir)?;

    let density = estimate_particle_density(
        cfg.params,
        &cfg.density,
        cfg.size,
        &times,
        cfg.replicates,
        cfg.seed,
    );
    write_density_csv(&dir.join("edge_density.csv"), &density)?;

    let horizons = [t_max / 2.0, t_max];
    let medians = flip_count_medians(
        cfg.params,
        &cfg.density,
        cfg.size,
        &horizons,
        cfg.replicates,
        cfg.seed,
    );
    let mut csv = CsvWriter::create(
        &dir.join("flip_medians.csv"),
        &["horizon", "median_flips_per_site_proxy"],
    )?;
    for (i, &h) in horizons.iter().enumerate() {
        csv.row(&[Field::Float(h), Field::Float(medians[i])])?;
    }
    csv.finish()?;

    let mut manifest = Manifest::new("fixation", cfg.canonical_text(), Some(cfg.seed));
    manifest.add_artifact("edge_density.csv");
    manifest.add_artifact("flip_medians.csv");
    manifest.write(dir)?;
    let growth = if medians[0] > 0.0 {
        medians[1] / medians[0] - 1.0
    } else if medians[1] > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    println!(
        "fixation: blockades {:.4} -> {:.4}; median flips {:?} (growth {:.1}%) -> {}",
        density.blockade_fraction.mean.first().copied().unwrap_or(0.0),
        density.blockade_fraction.mean.last().copied().unwrap_or(0.0),
        medians,
        100.0 * growth,
        dir.display()
    );
    Ok(())
}
