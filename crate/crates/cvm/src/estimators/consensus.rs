//! Absorption runs and the consensus-probability estimate against the exact
//! centrist-density lower bound.

use crate::estimators::ci::EstimateWithCI;
use crate::estimators::{replicate_state, EdgeMonitor};
use crate::model::density::DensityVector;
use crate::model::engine::{run_observed, StopCondition, StopReason};
use crate::model::graph::Graph;
use crate::model::params::{rho_c, Params};
use crate::rational::Rational;
use rayon::prelude::*;
use std::sync::Arc;

#[derive(Clone, Copy, Debug)]
pub struct ConsensusOptions {
    /// Safety net for absorption runs; exhausted replicates are censored,
    /// never dropped.
    pub event_budget: u64,
    /// Co-evolve the edge process on cycles/paths and assert that its
    /// particle total never increases.
    pub monitor_edges: bool,
    /// Additionally verify the exact coupling at every event (affordable on
    /// small graphs).
    pub verify_coupling_each_event: bool,
}

impl Default for ConsensusOptions {
    fn default() -> Self {
        ConsensusOptions {
            event_budget: 1_000_000_000,
            monitor_edges: true,
            verify_coupling_each_event: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConsensusEstimate {
    pub replicates: u64,
    /// Replicates absorbed in a monochromatic state.
    pub consensus: u64,
    /// Replicates absorbed in a frozen non-consensus state.
    pub frozen: u64,
    /// Replicates that exhausted the event budget.
    pub censored: u64,
    /// Fraction of replicates reaching consensus, over all replicates.
    pub estimate: EstimateWithCI,
    /// Exact lower bound (total centrist density) for comparison.
    pub rho_c_bound: Rational,
}

pub fn estimate_consensus_probability(
    params: Params,
    density: &DensityVector,
    graph: &Arc<Graph>,
    replicates: u64,
    seed: u64,
    options: ConsensusOptions,
) -> ConsensusEstimate {
    assert!(replicates > 0, "need at least one replicate");
    let monitor_edges = options.monitor_edges && graph.is_linear();
    let stop = StopCondition::absorption().with_event_budget(options.event_budget);
    let (consensus, frozen, censored) = (0..replicates)
        .into_par_iter()
        .map(|rep| {
            let state = replicate_state(params, graph, density, seed, rep);
            let mut monitor =
                monitor_edges.then(|| EdgeMonitor::new(&state, options.verify_coupling_each_event));
            let result = run_observed(
                state,
                &stop,
                &[],
                |_, _| {},
                |st, ev| {
                    if let Some(m) = monitor.as_mut() {
                        m.on_event(st, ev);
                    }
                },
            );
            match result.reason {
                StopReason::Consensus => (1u64, 0u64, 0u64),
                StopReason::Absorbed => (0, 1, 0),
                StopReason::EventBudget => (0, 0, 1),
                StopReason::TimeHorizon => unreachable!("absorption run saw a time horizon"),
            }
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    debug_assert_eq!(consensus + frozen + censored, replicates);
    ConsensusEstimate {
        replicates,
        consensus,
        frozen,
        censored,
        estimate: EstimateWithCI::proportion(consensus, replicates),
        rho_c_bound: rho_c(&params, density),
    }
}
