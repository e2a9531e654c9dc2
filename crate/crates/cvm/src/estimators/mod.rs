//! Monte Carlo and combinatorial statistics connecting trajectories to the
//! theory: consensus probability, clustering and particle-density curves,
//! martingale conservation, changeover statistics, weight-window scans, and
//! domain lengths.

pub mod changeovers;
pub mod ci;
pub mod consensus;
pub mod series;
pub mod windows;

pub use changeovers::{
    changeover_distribution, count_changeovers, count_edge_types, exact_deviation_probability,
    ld_decay_curve, LdPoint,
};
pub use ci::{median_u64, EstimateWithCI, SeriesAccumulator, TimeSeriesSummary, CONFIDENCE, Z_99};
pub use consensus::{estimate_consensus_probability, ConsensusEstimate, ConsensusOptions};
pub use series::{
    estimate_pair_agreement, estimate_particle_density, flip_count_medians, martingale_check,
    ParticleDensitySeries,
};
pub use windows::{domain_length_stats, window_weight_sums, DomainStats, WindowWeightScan};

use crate::edges::EdgeConfiguration;
use crate::model::config::Configuration;
use crate::model::density::DensityVector;
use crate::model::engine::{replicate_rng, ArrowEvent, RunState};
use crate::model::graph::Graph;
use crate::model::params::Params;
use std::sync::Arc;

/// Sample the initial configuration and hand the rest of the replicate's
/// stream to the dynamics.
pub(crate) fn replicate_state(
    params: Params,
    graph: &Arc<Graph>,
    density: &DensityVector,
    seed: u64,
    replicate: u64,
) -> RunState {
    let mut rng = replicate_rng(seed, replicate);
    let config = Configuration::sample(graph.clone(), density, &mut rng);
    RunState::new(params, config, rng)
}

/// Co-evolves the charged-particle process next to an opinion run and hard-
/// asserts the theory's per-event guarantees: the particle total never
/// increases, and (where requested) the evolved piles equal the projection
/// of the opinion configuration exactly.
pub(crate) struct EdgeMonitor {
    edges: EdgeConfiguration,
    verify_each_event: bool,
}

impl EdgeMonitor {
    pub(crate) fn new(state: &RunState, verify_each_event: bool) -> Self {
        let edges = EdgeConfiguration::project(state.config(), state.params().theta())
            .expect("edge monitor needs a cycle or path");
        EdgeMonitor {
            edges,
            verify_each_event,
        }
    }

    pub(crate) fn on_event(&mut self, state: &RunState, event: &ArrowEvent) {
        let before = self.edges.total_particles();
        self.edges.apply_arrow(event.source, event.target);
        let after = self.edges.total_particles();
        assert!(
            after <= before,
            "particle total increased: {before} -> {after}"
        );
        if self.verify_each_event {
            self.verify(state);
        }
    }

    /// Exact coupling check without allocating a fresh projection.
    pub(crate) fn verify(&self, state: &RunState) {
        let config = state.config();
        for (idx, &(a, b)) in config.graph().edges().iter().enumerate() {
            let projected = i32::from(config.opinion(b)) - i32::from(config.opinion(a));
            assert_eq!(
                self.edges.xi()[idx],
                projected,
                "coupling mismatch at edge {idx} (t = {})",
                state.time()
            );
        }
    }

    pub(crate) fn edges(&self) -> &EdgeConfiguration {
        &self.edges
    }
}
