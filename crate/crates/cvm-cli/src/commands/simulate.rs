//! `cvm simulate`: replicate orchestration with per-replicate summaries and
//! optional time-series observers.

use crate::csvout::{CsvWriter, Field};
use crate::manifest::Manifest;
use crate::runconfig::{Quantity, RunConfig, StopKind};
use anyhow::Result;
use cvm::estimators::{domain_length_stats, SeriesAccumulator};
use cvm::{replicate_rng, run_observed, Configuration, RunState, StopCondition, StopReason};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

struct ReplicateRow {
    reason: StopReason,
    final_time: f64,
    events: u64,
    consensus: bool,
    domains: usize,
    max_domain: usize,
    total_flips: u64,
}

fn reason_label(reason: StopReason) -> &'static str {
    match reason {
        StopReason::Consensus => "consensus",
        StopReason::Absorbed => "absorbed",
        StopReason::TimeHorizon => "time-horizon",
        StopReason::EventBudget => "event-budget",
    }
}

pub fn run(map: BTreeMap<String, String>, dir: &Path) -> Result<()> {
    let cfg = RunConfig::resolve(map)?;
    let graph = Arc::new(cfg.build_graph()?);
    let stop = match cfg.stop {
        StopKind::Absorption | StopKind::Consensus => StopCondition::absorption()
            .with_event_budget(cfg.event_budget.unwrap_or(1_000_000_000)),
        StopKind::Time => {
            let mut s = StopCondition::time_horizon(cfg.t_max.expect("validated"));
            if let Some(b) = cfg.event_budget {
                s = s.with_event_budget(b);
            }
            s
        }
        StopKind::Events => StopCondition::absorption()
            .with_event_budget(cfg.event_budget.expect("validated")),
    };
    crate::ensure_outdir(dir)?;
    let times = cfg.observer_times.clone();
    let f = cfg.params.f() as usize;
    let want_counts = cfg.wants(Quantity::Counts) && !times.is_empty();
    let want_edges = cfg.wants(Quantity::Edges) && !times.is_empty() && graph.is_linear();
    let count_slots = if want_counts { f * times.len() } else { 0 };
    let edge_slots = if want_edges { 3 * times.len() } else { 0 };

    let results: Vec<(ReplicateRow, Vec<u64>)> = (0..cfg.replicates)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replicate_rng(cfg.seed, rep);
            let config = Configuration::sample(graph.clone(), &cfg.density, &mut rng);
            let state = RunState::new(cfg.params, config, rng);
            let monitor = std::cell::RefCell::new(want_edges.then(|| {
                cvm::edges::EdgeConfiguration::project(state.config(), cfg.params.theta())
                    .expect("linear graph")
            }));
            let mut observations = vec![0u64; count_slots + edge_slots];
            let mut sample_idx = 0;
            let result = run_observed(
                state,
                &stop,
                &times,
                |_, st| {
                    if want_counts {
                        for &o in st.config().opinions() {
                            observations[(o as usize - 1) * times.len() + sample_idx] += 1;
                        }
                    }
                    if let Some(edges) = monitor.borrow().as_ref() {
                        let base = count_slots;
                        observations[base + sample_idx] = edges.total_particles();
                        observations[base + times.len() + sample_idx] =
                            edges.occupied_edges() as u64;
                        observations[base + 2 * times.len() + sample_idx] =
                            edges.blockade_edges() as u64;
                    }
                    sample_idx += 1;
                },
                |_, ev| {
                    if let Some(edges) = monitor.borrow_mut().as_mut() {
                        let before = edges.total_particles();
                        edges.apply_arrow(ev.source, ev.target);
                        assert!(edges.total_particles() <= before);
                    }
                },
            );
            let (domains, max_domain) = match domain_length_stats(&result.config) {
                Ok(stats) => (stats.lengths.len(), stats.max),
                Err(_) => (0, 0),
            };
            let row = ReplicateRow {
                reason: result.reason,
                final_time: result.final_time,
                events: result.events,
                consensus: result.config.is_consensus(),
                domains,
                max_domain,
                total_flips: result.flips.iter().sum(),
            };
            (row, observations)
        })
        .collect();

    let mut csv = CsvWriter::create(
        &dir.join("replicates.csv"),
        &[
            "replicate",
            "stop_reason",
            "final_time",
            "events",
            "consensus",
            "domains",
            "max_domain",
            "total_flips",
        ],
    )?;
    for (rep, (row, _)) in results.iter().enumerate() {
        csv.row(&[
            Field::UInt(rep as u64),
            Field::Str(reason_label(row.reason)),
            Field::Float(row.final_time),
            Field::UInt(row.events),
            Field::Bool(row.consensus),
            Field::UInt(row.domains as u64),
            Field::UInt(row.max_domain as u64),
            Field::UInt(row.total_flips),
        ])?;
    }
    csv.finish()?;
    let mut manifest = Manifest::new("simulate", cfg.canonical_text(), Some(cfg.seed));
    manifest.add_artifact("replicates.csv");

    if count_slots + edge_slots > 0 {
        let mut acc = SeriesAccumulator::new(count_slots + edge_slots);
        for (_, observations) in &results {
            acc.record(observations);
        }
        if want_counts {
            let mut counts_csv = CsvWriter::create(
                &dir.join("counts.csv"),
                &["time", "opinion", "mean_count", "ci_half_width"],
            )?;
            let groups = acc.summarize_groups(
                &vec![0.0; times.len()],
                (count_slots + edge_slots) / times.len(),
                1.0,
            );
            for j in 0..f {
                for (i, &t) in times.iter().enumerate() {
                    counts_csv.row(&[
                        Field::Float(t),
                        Field::UInt(j as u64 + 1),
                        Field::Float(groups[j].mean[i]),
                        Field::Float(groups[j].half_width[i]),
                    ])?;
                }
            }
            counts_csv.finish()?;
            manifest.add_artifact("counts.csv");
        }
        if want_edges {
            let scale = 1.0 / graph.edge_count() as f64;
            let groups = acc.summarize_groups(
                &vec![0.0; times.len()],
                (count_slots + edge_slots) / times.len(),
                scale,
            );
            let base = count_slots / times.len();
            let mut edges_csv = CsvWriter::create(
                &dir.join("edge_density.csv"),
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
            for (i, &t) in times.iter().enumerate() {
                edges_csv.row(&[
                    Field::Float(t),
                    Field::Float(groups[base].mean[i]),
                    Field::Float(groups[base].half_width[i]),
                    Field::Float(groups[base + 1].mean[i]),
                    Field::Float(groups[base + 1].half_width[i]),
                    Field::Float(groups[base + 2].mean[i]),
                    Field::Float(groups[base + 2].half_width[i]),
                ])?;
            }
            edges_csv.finish()?;
            manifest.add_artifact("edge_density.csv");
        }
    }

    manifest.write(dir)?;
    let consensus_count = results.iter().filter(|(r, _)| r.consensus).count();
    println!(
        "simulate: {} replicates, {} consensus -> {}",
        cfg.replicates,
        consensus_count,
        dir.display()
    );
    Ok(())
}
