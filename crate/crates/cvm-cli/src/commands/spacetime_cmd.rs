//! `cvm spacetime`: render one replicate on the torus as a space-time
//! pixmap, one row per uniformly spaced time sample.

use crate::manifest::Manifest;
use crate::runconfig::RunConfig;
use crate::spacetime::{interface_count, render_p6};
use anyhow::{bail, Context, Result};
use cvm::edges::EdgeConfiguration;
use cvm::{replicate_rng, run_observed, Configuration, RunState, StopCondition, Topology};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

pub fn run(
    map: BTreeMap<String, String>,
    dir: &Path,
    rows: usize,
    interfaces_only: bool,
) -> Result<()> {
    let cfg = RunConfig::resolve(map)?;
    if cfg.topology != Topology::Cycle {
        bail!("space-time diagrams require graph.topology = cycle");
    }
    let Some(t_max) = cfg.t_max else {
        bail!("space-time diagrams need run.t-max");
    };
    if rows < 2 {
        bail!("--rows must be at least 2");
    }
    let graph = Arc::new(cfg.build_graph()?);
    crate::ensure_outdir(dir)?;
    let times: Vec<f64> = (0..rows)
        .map(|i| t_max * i as f64 / (rows - 1) as f64)
        .collect();

    let mut rng = replicate_rng(cfg.seed, 0);
    let config = Configuration::sample(graph, &cfg.density, &mut rng);
    let state = RunState::new(cfg.params, config, rng);
    let mut snapshots: Vec<Vec<u8>> = Vec::with_capacity(rows);
    run_observed(
        state,
        &StopCondition::time_horizon(t_max),
        &times,
        |_, st| snapshots.push(st.config().opinions().to_vec()),
        |_, _| {},
    );
    assert_eq!(snapshots.len(), rows);
    // interface pixels correspond one-to-one to particle-occupied edges
    for row in &snapshots {
        let graph = Arc::new(cvm::Graph::cycle(row.len() as u32).expect("valid size"));
        let config = Configuration::new(graph, row.clone(), cfg.params.f()).expect("snapshot");
        let edges = EdgeConfiguration::project(&config, cfg.params.theta()).expect("cycle");
        assert_eq!(interface_count(row), edges.occupied_edges());
    }

    let ppm = render_p6(&snapshots, cfg.params.f(), interfaces_only)?;
    let path = dir.join("spacetime.ppm");
    std::fs::write(&path, &ppm).with_context(|| format!("cannot write {}", path.display()))?;

    let mut manifest = Manifest::new("spacetime", cfg.canonical_text(), Some(cfg.seed));
    manifest.add_artifact("spacetime.ppm");
    manifest.write(dir)?;
    println!(
        "spacetime: {} x {} pixels ({}) -> {}",
        cfg.size,
        rows,
        if interfaces_only { "interfaces" } else { "palette" },
        path.display()
    );
    Ok(())
}
