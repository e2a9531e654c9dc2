//! Changeovers in i.i.d. sequences, edge-type counts, and the empirical
//! large-deviation decay of the changeover count, with an exact
//! dynamic-programming oracle for its distribution.

use crate::error::{Error, Result};
use crate::model::engine::replicate_rng;
use rand::Rng;
use rayon::prelude::*;

/// Number of adjacent unequal pairs in the sequence.
pub fn count_changeovers<T: PartialEq>(sequence: &[T]) -> Result<u64> {
    if sequence.len() < 2 {
        return Err(Error::Domain(format!(
            "changeover count needs at least 2 outcomes, got {}",
            sequence.len()
        )));
    }
    Ok(sequence.windows(2).filter(|w| w[0] != w[1]).count() as u64)
}

/// Counts of ordered adjacent pairs `i -> j` over a window: entry `[i-1][j-1]`
/// is the number of positions with opinion `i` directly left of opinion `j`.
/// All entries sum to `len - 1`.
pub fn count_edge_types(sequence: &[u8], f: u32) -> Result<Vec<Vec<u64>>> {
    if let Some(&bad) = sequence.iter().find(|&&o| o == 0 || u32::from(o) > f) {
        return Err(Error::Domain(format!("opinion {bad} outside 1..={f}")));
    }
    let mut counts = vec![vec![0u64; f as usize]; f as usize];
    for w in sequence.windows(2) {
        counts[(w[0] - 1) as usize][(w[1] - 1) as usize] += 1;
    }
    Ok(counts)
}

/// Exact distribution of the changeover count over `pairs` adjacent pairs
/// (a sequence of `pairs + 1` flips) with heads-probability `p`: returns
/// `P(Z = k)` for `k = 0..=pairs`. Dynamic program over (last outcome,
/// changeovers so far).
pub fn changeover_distribution(pairs: usize, p: f64) -> Vec<f64> {
    assert!((0.0..=1.0).contains(&p));
    let q = 1.0 - p;
    // heads[k], tails[k]: probability of (last outcome, k changeovers)
    let mut heads = vec![0.0; pairs + 1];
    let mut tails = vec![0.0; pairs + 1];
    heads[0] = p;
    tails[0] = q;
    for _ in 0..pairs {
        let mut next_heads = vec![0.0; pairs + 1];
        let mut next_tails = vec![0.0; pairs + 1];
        for k in 0..=pairs {
            if heads[k] > 0.0 {
                next_heads[k] += heads[k] * p;
                if k + 1 <= pairs {
                    next_tails[k + 1] += heads[k] * q;
                }
            }
            if tails[k] > 0.0 {
                next_tails[k] += tails[k] * q;
                if k + 1 <= pairs {
                    next_heads[k + 1] += tails[k] * p;
                }
            }
        }
        heads = next_heads;
        tails = next_tails;
    }
    (0..=pairs).map(|k| heads[k] + tails[k]).collect()
}

/// Exact `P(|Z_N - 2 N p (1-p)| >= eps N)` from the DP distribution.
pub fn exact_deviation_probability(n: usize, p: f64, eps: f64) -> f64 {
    let mean = 2.0 * n as f64 * p * (1.0 - p);
    changeover_distribution(n, p)
        .iter()
        .enumerate()
        .filter(|&(k, _)| (k as f64 - mean).abs() >= eps * n as f64)
        .map(|(_, &prob)| prob)
        .sum()
}

/// One point of the empirical large-deviation decay curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LdPoint {
    pub n: usize,
    pub replicates: u64,
    pub deviations: u64,
    pub probability: f64,
    /// `-ln(probability)`; for zero counts this is the resolution bound
    /// `ln(replicates)` and `censored` is set.
    pub neg_log_probability: f64,
    pub censored: bool,
}

/// Empirical deviation probabilities of the changeover count for windows of
/// each requested length. Deviation means `|Z_N - 2Np(1-p)| >= eps N`.
pub fn ld_decay_curve(
    p: f64,
    eps: f64,
    window_lengths: &[usize],
    replicates: u64,
    seed: u64,
) -> Vec<LdPoint> {
    assert!(p > 0.0 && p < 1.0, "need 0 < p < 1");
    assert!(eps > 0.0, "need eps > 0");
    window_lengths
        .iter()
        .enumerate()
        .map(|(idx, &n)| {
            let mean = 2.0 * n as f64 * p * (1.0 - p);
            let bound = eps * n as f64;
            let deviations: u64 = (0..replicates)
                .into_par_iter()
                .map(|rep| {
                    let mut rng = replicate_rng(seed, (idx as u64) * replicates + rep);
                    let mut last = rng.random::<f64>() < p;
                    let mut z = 0u64;
                    for _ in 0..n {
                        let next = rng.random::<f64>() < p;
                        if next != last {
                            z += 1;
                        }
                        last = next;
                    }
                    u64::from((z as f64 - mean).abs() >= bound)
                })
                .sum();
            let probability = deviations as f64 / replicates as f64;
            let (neg_log, censored) = if deviations == 0 {
                ((replicates as f64).ln(), true)
            } else {
                (-probability.ln(), false)
            };
            LdPoint {
                n,
                replicates,
                deviations,
                probability,
                neg_log_probability: neg_log,
                censored,
            }
        })
        .collect()
}
