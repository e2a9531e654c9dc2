//! Weight sums over spatial windows and domain-length statistics.

use crate::analytics::weights::WeightFunction;
use crate::error::{Error, Result};
use crate::model::config::Configuration;
use crate::model::graph::Topology;
use std::collections::BTreeMap;

/// Result of the all-window minimum scan over a window of the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowWeightScan {
    /// Weight of each edge of the window.
    pub weights: Vec<i64>,
    /// For each right endpoint `r`, the minimum of `sum_{e=l..=r} phi(e)`
    /// over all left endpoints `l <= r`.
    pub min_sum_ending_at: Vec<i64>,
    /// Minimum over all windows.
    pub min_window_sum: i64,
    /// Whether some window has total weight `<= 0`.
    pub any_nonpositive: bool,
}

/// Compute per-edge weights from the opinion sequence (edges are consecutive
/// differences) and scan all windows in O(N) by prefix sums: the minimal sum
/// ending at `r` is `S(r+1) - max_{l <= r} S(l)`.
pub fn window_weight_sums(opinions: &[u8], theta: u32) -> Result<WindowWeightScan> {
    if opinions.len() < 2 {
        return Err(Error::Domain(
            "window scan needs at least two opinions".into(),
        ));
    }
    let w = WeightFunction::new(theta);
    let weights: Vec<i64> = opinions
        .windows(2)
        .map(|pair| w.weight(u32::from(pair[0].abs_diff(pair[1]))))
        .collect();
    let mut prefix = 0i64;
    let mut max_prefix = 0i64; // S(0) = 0
    let mut min_sum_ending_at = Vec::with_capacity(weights.len());
    for &weight in &weights {
        prefix += weight;
        min_sum_ending_at.push(prefix - max_prefix);
        max_prefix = max_prefix.max(prefix);
    }
    let min_window_sum = *min_sum_ending_at.iter().min().expect("nonempty");
    Ok(WindowWeightScan {
        weights,
        min_sum_ending_at,
        min_window_sum,
        any_nonpositive: min_window_sum <= 0,
    })
}

/// Lengths of maximal monochromatic runs around a cycle.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainStats {
    /// Domain lengths in cyclic order starting after some boundary.
    pub lengths: Vec<usize>,
    pub mean: f64,
    pub max: usize,
    pub histogram: BTreeMap<usize, usize>,
}

pub fn domain_length_stats(config: &Configuration) -> Result<DomainStats> {
    let graph = config.graph();
    if graph.topology() != Topology::Cycle {
        return Err(Error::NonLinearTopology(graph.topology().to_string()));
    }
    let n = graph.vertex_count();
    let boundaries: Vec<usize> = (0..n)
        .filter(|&i| config.opinion(i as u32) != config.opinion(((i + 1) % n) as u32))
        .collect();
    let lengths = if boundaries.is_empty() {
        vec![n]
    } else {
        boundaries
            .iter()
            .zip(boundaries.iter().cycle().skip(1))
            .map(|(&a, &b)| (b + n - a) % n)
            .map(|len| if len == 0 { n } else { len })
            .take(boundaries.len())
            .collect()
    };
    debug_assert_eq!(lengths.iter().sum::<usize>(), n);
    let mut histogram = BTreeMap::new();
    for &len in &lengths {
        *histogram.entry(len).or_insert(0usize) += 1;
    }
    Ok(DomainStats {
        mean: n as f64 / lengths.len() as f64,
        max: lengths.iter().copied().max().expect("nonempty"),
        lengths,
        histogram,
    })
}
