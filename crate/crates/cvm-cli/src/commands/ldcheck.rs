//! `cvm ld-check`: empirical changeover deviation probabilities against the
//! exact dynamic-programming distribution.

use crate::csvout::{CsvWriter, Field};
use crate::manifest::Manifest;
use crate::runconfig::canonical_text;
use anyhow::{anyhow, bail, Result};
use cvm::estimators::{exact_deviation_probability, ld_decay_curve};
use std::collections::BTreeMap;
use std::path::Path;

pub fn run(
    map: BTreeMap<String, String>,
    dir: &Path,
    p: f64,
    epsilon: f64,
    lengths: &str,
    replicates: u64,
) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        bail!("--p must be strictly between 0 and 1");
    }
    if epsilon <= 0.0 {
        bail!("--epsilon must be positive");
    }
    if replicates == 0 {
        bail!("--replicates must be at least 1");
    }
    let seed: u64 = map
        .get("run.seed")
        .ok_or_else(|| anyhow!("ld-check needs a seed (--seed or run.seed)"))?
        .parse()
        .map_err(|e| anyhow!("run.seed: {e}"))?;
    let ns = lengths
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|e| anyhow!("bad window length `{s}`: {e}"))
        })
        .collect::<Result<Vec<_>>>()?;
    if ns.is_empty() {
        bail!("need at least one window length");
    }

    crate::ensure_outdir(dir)?;
    let points = ld_decay_curve(p, epsilon, &ns, replicates, seed);
    let mut csv = CsvWriter::create(
        &dir.join("ld_curve.csv"),
        &[
            "N",
            "replicates",
            "deviations",
            "probability",
            "neg_log_probability",
            "censored",
            "exact_probability",
        ],
    )?;
    for point in &points {
        csv.row(&[
            Field::UInt(point.n as u64),
            Field::UInt(point.replicates),
            Field::UInt(point.deviations),
            Field::Float(point.probability),
            Field::Float(point.neg_log_probability),
            Field::Bool(point.censored),
            Field::Float(exact_deviation_probability(point.n, p, epsilon)),
        ])?;
    }
    csv.finish()?;

    let mut manifest = Manifest::new("ld-check", canonical_text(&map), Some(seed));
    manifest.add_artifact("ld_curve.csv");
    manifest.write(dir)?;
    println!(
        "ld-check: p={p} eps={epsilon} -> {}",
        dir.join("ld_curve.csv").display()
    );
    Ok(())
}
