//! `cvm consensus`: absorption runs, consensus rate with CI, exact bound.

use crate::csvout::{CsvWriter, Field};
use crate::manifest::Manifest;
use crate::runconfig::{RunConfig, StopKind};
use anyhow::{bail, Result};
use cvm::estimators::{estimate_consensus_probability, ConsensusOptions};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

pub fn run(map: BTreeMap<String, String>, dir: &Path) -> Result<()> {
    let cfg = RunConfig::resolve(map)?;
    if !matches!(cfg.stop, StopKind::Absorption | StopKind::Consensus) {
        bail!("consensus estimation requires run.stop = absorption (or consensus)");
    }
    let graph = Arc::new(cfg.build_graph()?);
    crate::ensure_outdir(dir)?;
    let options = ConsensusOptions {
        event_budget: cfg.event_budget.unwrap_or(1_000_000_000),
        monitor_edges: true,
        verify_coupling_each_event: graph.is_linear() && graph.edge_count() <= 64,
    };
    let estimate = estimate_consensus_probability(
        cfg.params,
        &cfg.density,
        &graph,
        cfg.replicates,
        cfg.seed,
        options,
    );

    let mut csv = CsvWriter::create(
        &dir.join("consensus.csv"),
        &[
            "F",
            "theta",
            "graph",
            "N",
            "replicates",
            "consensus_rate",
            "ci_half_width",
            "rho_c_bound",
            "frozen",
            "censored",
        ],
    )?;
    csv.row(&[
        Field::UInt(u64::from(cfg.params.f())),
        Field::UInt(u64::from(cfg.params.theta())),
        Field::Str(&cfg.topology.to_string()),
        Field::UInt(u64::from(cfg.size)),
        Field::UInt(estimate.replicates),
        Field::Float(estimate.estimate.estimate),
        Field::Float(estimate.estimate.half_width),
        Field::Rational(&estimate.rho_c_bound),
        Field::UInt(estimate.frozen),
        Field::UInt(estimate.censored),
    ])?;
    csv.finish()?;

    let mut manifest = Manifest::new("consensus", cfg.canonical_text(), Some(cfg.seed));
    manifest.add_artifact("consensus.csv");
    manifest.write(dir)?;
    println!(
        "consensus: rate {:.4} +- {:.4} (bound {}), frozen {}, censored {} -> {}",
        estimate.estimate.estimate,
        estimate.estimate.half_width,
        cvm::rational::display_fraction(&estimate.rho_c_bound),
        estimate.frozen,
        estimate.censored,
        dir.join("consensus.csv").display()
    );
    Ok(())
}
