//! Confidence-interval plumbing shared by the Monte Carlo estimators.
//!
//! All per-replicate observables here are integer-valued, so replicate
//! statistics accumulate exactly in wide integers and merge commutatively;
//! results are bit-identical under any parallel schedule. Floating point
//! enters only when the final mean and normal-approximation interval are
//! formed.

/// Two-sided 99% normal quantile (`Phi^-1(0.995)`).
pub const Z_99: f64 = 2.5758293035489004;

/// Confidence level used throughout.
pub const CONFIDENCE: f64 = 0.99;

/// Point estimate with a normal-approximation confidence half-width.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateWithCI {
    pub estimate: f64,
    pub half_width: f64,
    pub confidence: f64,
    pub replicates: u64,
}

impl EstimateWithCI {
    /// Proportion estimate: half-width `z sqrt(p(1-p)/n)`.
    pub fn proportion(successes: u64, replicates: u64) -> Self {
        assert!(replicates > 0 && successes <= replicates);
        let n = replicates as f64;
        let p = successes as f64 / n;
        EstimateWithCI {
            estimate: p,
            half_width: Z_99 * (p * (1.0 - p) / n).sqrt(),
            confidence: CONFIDENCE,
            replicates,
        }
    }
}

/// Replicate mean per sample time with CI half-widths.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeriesSummary {
    pub times: Vec<f64>,
    pub mean: Vec<f64>,
    pub half_width: Vec<f64>,
    pub replicates: u64,
}

/// Exact integer accumulator over a fixed-length vector of observables.
#[derive(Clone, Debug)]
pub struct SeriesAccumulator {
    n: u64,
    sum: Vec<u128>,
    sum_sq: Vec<u128>,
}

impl SeriesAccumulator {
    pub fn new(len: usize) -> Self {
        SeriesAccumulator {
            n: 0,
            sum: vec![0; len],
            sum_sq: vec![0; len],
        }
    }

    /// Absorb one replicate's observation vector.
    pub fn record(&mut self, values: &[u64]) {
        assert_eq!(values.len(), self.sum.len());
        self.n += 1;
        for (i, &v) in values.iter().enumerate() {
            let v = u128::from(v);
            self.sum[i] += v;
            self.sum_sq[i] += v * v;
        }
    }

    pub fn merge(mut self, other: SeriesAccumulator) -> SeriesAccumulator {
        assert_eq!(self.sum.len(), other.sum.len());
        self.n += other.n;
        for i in 0..self.sum.len() {
            self.sum[i] += other.sum[i];
            self.sum_sq[i] += other.sum_sq[i];
        }
        self
    }

    pub fn replicates(&self) -> u64 {
        self.n
    }

    /// Mean and half-width of `scale * value` at each slot.
    pub fn summarize(&self, times: &[f64], scale: f64) -> TimeSeriesSummary {
        assert_eq!(times.len(), self.sum.len());
        let n = self.n as f64;
        let mut mean = Vec::with_capacity(times.len());
        let mut half_width = Vec::with_capacity(times.len());
        for i in 0..self.sum.len() {
            let s = self.sum[i] as f64;
            let sq = self.sum_sq[i] as f64;
            let m = s / n;
            mean.push(scale * m);
            if self.n < 2 {
                half_width.push(0.0);
            } else {
                let var = ((sq - s * m).max(0.0)) / (n - 1.0);
                half_width.push(Z_99 * scale * (var / n).sqrt());
            }
        }
        TimeSeriesSummary {
            times: times.to_vec(),
            mean,
            half_width,
            replicates: self.n,
        }
    }

    /// Split a flattened accumulator's summary into `groups` interleaved
    /// series of length `times.len()` each (slot layout `g * len + t`).
    pub fn summarize_groups(
        &self,
        times: &[f64],
        groups: usize,
        scale: f64,
    ) -> Vec<TimeSeriesSummary> {
        assert_eq!(self.sum.len(), groups * times.len());
        let whole = self.summarize(&vec![0.0; self.sum.len()], scale);
        (0..groups)
            .map(|g| {
                let lo = g * times.len();
                let hi = lo + times.len();
                TimeSeriesSummary {
                    times: times.to_vec(),
                    mean: whole.mean[lo..hi].to_vec(),
                    half_width: whole.half_width[lo..hi].to_vec(),
                    replicates: self.n,
                }
            })
            .collect()
    }
}

/// Median of pooled integer observations (average of the central pair for
/// even counts).
pub fn median_u64(values: &mut [u64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_unstable();
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2] as f64
    } else {
        (values[n / 2 - 1] as f64 + values[n / 2] as f64) / 2.0
    }
}
