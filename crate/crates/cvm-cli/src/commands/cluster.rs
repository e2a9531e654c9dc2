//! `cvm cluster`: pair-agreement curves and edge-process density curves on
//! the torus.

use crate::csvout::{CsvWriter, Field};
use crate::manifest::Manifest;
use crate::runconfig::RunConfig;
use anyhow::{bail, Result};
use cvm::estimators::{estimate_pair_agreement, estimate_particle_density};
use cvm::Topology;
use std::collections::BTreeMap;
use std::path::Path;

pub fn run(map: BTreeMap<String, String>, dir: &Path) -> Result<()> {
    let cfg = RunConfig::resolve(map)?;
    if cfg.topology != Topology::Cycle {
        bail!("cluster curves require graph.topology = cycle");
    }
    let times = observation_times(&cfg)?;
    crate::ensure_outdir(dir)?;
    let pairs = [(0u32, 1u32), (0u32, cfg.size / 2)];

    let agreement = estimate_pair_agreement(
        cfg.params,
        &cfg.density,
        cfg.size,
        &pairs,
        &times,
        cfg.replicates,
        cfg.seed,
    );
    let mut csv = CsvWriter::create(
        &dir.join("agreement.csv"),
        &["time", "vertex_a", "vertex_b", "agreement", "ci_half_width"],
    )?;
    for (p, series) in agreement.iter().enumerate() {
        for (i, &t) in series.times.iter().enumerate() {
            csv.row(&[
                Field::Float(t),
                Field::UInt(u64::from(pairs[p].0)),
                Field::UInt(u64::from(pairs[p].1)),
                Field::Float(series.mean[i]),
                Field::Float(series.half_width[i]),
            ])?;
        }
    }
    csv.finish()?;

    let density = estimate_particle_density(
        cfg.params,
        &cfg.density,
        cfg.size,
        &times,
        cfg.replicates,
        cfg.seed,
    );
    write_density_csv(&dir.join("particle_density.csv"), &density)?;

    let mut manifest = Manifest::new("cluster", cfg.canonical_text(), Some(cfg.seed));
    manifest.add_artifact("agreement.csv");
    manifest.add_artifact("particle_density.csv");
    manifest.write(dir)?;
    println!(
        "cluster: {} sample times, {} replicates -> {}",
        times.len(),
        cfg.replicates,
        dir.display()
    );
    Ok(())
}

pub fn observation_times(cfg: &RunConfig) -> Result<Vec<f64>> {
    if !cfg.observer_times.is_empty() {
        return Ok(cfg.observer_times.clone());
    }
    let Some(t_max) = cfg.t_max else {
        bail!("need observer.times or run.t-max to build a sampling grid");
    };
    let mut times = vec![0.0];
    let mut t = 1.0;
    while t <= t_max {
        times.push(t);
        t *= 2.0;
    }
    if *times.last().unwrap() < t_max {
        times.push(t_max);
    }
    Ok(times)
}

pub fn write_density_csv(
    path: &Path,
    density: &cvm::estimators::ParticleDensitySeries,
) -> Result<()> {
    let mut csv = CsvWriter::create(
        path,
        &[
            "time",
            "mean_abs_pile",
            "mean_abs_pile_ci",
            "interface_fraction",
            "interface_fraction_ci",
            "blockade_fraction",
            "blockade_fraction_ci",
        ],
    )?;
    let s = &density.mean_abs_pile;
    for (i, &t) in s.times.iter().enumerate() {
        csv.row(&[
            Field::Float(t),
            Field::Float(density.mean_abs_pile.mean[i]),
            Field::Float(density.mean_abs_pile.half_width[i]),
            Field::Float(density.interface_fraction.mean[i]),
            Field::Float(density.interface_fraction.half_width[i]),
            Field::Float(density.blockade_fraction.mean[i]),
            Field::Float(density.blockade_fraction.half_width[i]),
        ])?;
    }
    csv.finish()
}
