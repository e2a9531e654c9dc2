//! Exact event-driven dynamics via the uniformized graphical representation:
//! one global exponential clock at rate `2|E|` (the number of directed
//! arrows), a uniformly chosen arrow per ring, equal in law to independent
//! rate-one Poisson processes per directed arrow.

use crate::model::config::Configuration;
use crate::model::params::Params;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Counter-based stream cipher RNG: cheap independent streams per replicate.
pub type RunRng = ChaCha8Rng;

/// The RNG stream for one replicate, derived from the master seed and the
/// replicate index. Replicates are independent and reproducible under any
/// parallel schedule.
pub fn replicate_rng(master_seed: u64, replicate: u64) -> RunRng {
    let mut rng = RunRng::seed_from_u64(master_seed);
    rng.set_stream(replicate);
    rng
}

/// One arrow of the graphical representation, recorded after application.
/// `active` means the endpoints' opinion distance was within the threshold
/// at the instant of the ring (an imitation happened unless it was a no-op
/// between equal opinions).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArrowEvent {
    pub time: f64,
    pub source: u32,
    pub target: u32,
    pub active: bool,
}

/// When to stop a run. Absorption always stops a run (no opinion can ever
/// change afterwards), so a plain absorption stop is the default condition.
#[derive(Clone, Copy, Debug, Default)]
pub struct StopCondition {
    pub t_max: Option<f64>,
    pub event_budget: Option<u64>,
}

impl StopCondition {
    /// Run until the configuration freezes.
    pub fn absorption() -> Self {
        StopCondition::default()
    }

    /// Run until time `t_max` (or absorption, whichever comes first).
    pub fn time_horizon(t_max: f64) -> Self {
        StopCondition {
            t_max: Some(t_max),
            event_budget: None,
        }
    }

    pub fn with_event_budget(mut self, budget: u64) -> Self {
        self.event_budget = Some(budget);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    /// Absorbed in a monochromatic configuration.
    Consensus,
    /// Absorbed in a frozen non-consensus configuration.
    Absorbed,
    /// Reached the requested time horizon.
    TimeHorizon,
    /// Exhausted the event budget (reported distinctly: the run is censored).
    EventBudget,
}

/// A live run: configuration, clock, RNG stream, and per-vertex flip counts.
/// Single-threaded by construction; replicates parallelize over independent
/// states.
#[derive(Clone, Debug)]
pub struct RunState {
    params: Params,
    config: Configuration,
    time: f64,
    rng: RunRng,
    flips: Vec<u64>,
    events: u64,
    active_discordant: usize,
}

impl RunState {
    pub fn new(params: Params, config: Configuration, rng: RunRng) -> Self {
        let active_discordant = config.active_discordant_edges(params.theta());
        let n = config.graph().vertex_count();
        RunState {
            params,
            config,
            time: 0.0,
            rng,
            flips: vec![0; n],
            events: 0,
            active_discordant,
        }
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn flips(&self) -> &[u64] {
        &self.flips
    }

    pub fn events_drawn(&self) -> u64 {
        self.events
    }

    /// No active discordant edge remains: nothing can ever change again.
    /// Maintained incrementally, O(1) per query.
    pub fn is_absorbed(&self) -> bool {
        self.active_discordant == 0
    }

    /// Draw the next ring time of the global clock without firing an arrow.
    /// Strictly increases the proposed time even under extreme rounding.
    fn propose_time(&mut self) -> f64 {
        let rate = self.config.graph().arrow_count() as f64;
        let u: f64 = self.rng.random();
        let t = self.time + (-(1.0 - u).ln() / rate);
        if t > self.time {
            t
        } else {
            self.time.next_up()
        }
    }

    /// Fire a uniformly chosen directed arrow at time `t`.
    fn fire_arrow(&mut self, t: f64) -> ArrowEvent {
        let (source, target) = {
            let g = self.config.graph();
            let k = self.rng.random_range(0..g.arrow_count());
            g.arrow(k)
        };
        let theta = self.params.theta();
        let active = self.config.arrow_is_active(source, target, theta);
        let before = self.config.opinion(target);
        if self.config.apply_arrow(source, target, theta) {
            self.flips[target as usize] += 1;
            self.refresh_discordant(target, before);
        }
        self.time = t;
        self.events += 1;
        ArrowEvent {
            time: t,
            source,
            target,
            active,
        }
    }

    /// One exact step: exponential waiting time at rate `2|E|`, then a
    /// uniform arrow.
    pub fn step(&mut self) -> ArrowEvent {
        let t = self.propose_time();
        self.fire_arrow(t)
    }

    fn refresh_discordant(&mut self, target: u32, before: u8) {
        let after = self.config.opinion(target);
        let theta = self.params.theta();
        let mut delta: isize = 0;
        for &z in self.config.graph().neighbors(target) {
            let zo = self.config.opinion(z);
            delta += isize::from(is_active_discordant(after, zo, theta))
                - isize::from(is_active_discordant(before, zo, theta));
        }
        self.active_discordant = (self.active_discordant as isize + delta) as usize;
    }
}

#[inline]
fn is_active_discordant(a: u8, b: u8, theta: u32) -> bool {
    let g = u32::from(a.abs_diff(b));
    g > 0 && g <= theta
}

/// Outcome of a completed run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub reason: StopReason,
    pub final_time: f64,
    pub events: u64,
    pub config: Configuration,
    pub flips: Vec<u64>,
}

impl RunResult {
    pub fn is_consensus(&self) -> bool {
        self.reason == StopReason::Consensus
    }
}

/// Run to the stop condition with time-sampled observation and a per-event
/// hook.
///
/// `on_sample(s, state)` fires once per entry of `sample_times` (which must
/// be nondecreasing), with the state holding at time `s`; a sample at the
/// exact instant of an event sees the post-event state. Once the run
/// absorbs, all remaining sample times see the frozen state. Runs censored
/// by the event budget do not flush remaining samples.
///
/// `on_event` fires after every applied event, including no-ops.
pub fn run_observed(
    mut state: RunState,
    stop: &StopCondition,
    sample_times: &[f64],
    mut on_sample: impl FnMut(f64, &RunState),
    mut on_event: impl FnMut(&RunState, &ArrowEvent),
) -> RunResult {
    let mut next_sample = 0;
    let reason = loop {
        if state.is_absorbed() {
            while next_sample < sample_times.len() {
                on_sample(sample_times[next_sample], &state);
                next_sample += 1;
            }
            break if state.config.is_consensus() {
                StopReason::Consensus
            } else {
                StopReason::Absorbed
            };
        }
        if let Some(budget) = stop.event_budget {
            if state.events >= budget {
                break StopReason::EventBudget;
            }
        }
        let t_next = state.propose_time();
        if let Some(t_max) = stop.t_max {
            if t_next > t_max {
                while next_sample < sample_times.len() && sample_times[next_sample] <= t_max {
                    on_sample(sample_times[next_sample], &state);
                    next_sample += 1;
                }
                state.time = t_max;
                break StopReason::TimeHorizon;
            }
        }
        while next_sample < sample_times.len() && sample_times[next_sample] < t_next {
            on_sample(sample_times[next_sample], &state);
            next_sample += 1;
        }
        let event = state.fire_arrow(t_next);
        on_event(&state, &event);
    };
    RunResult {
        reason,
        final_time: state.time,
        events: state.events,
        config: state.config,
        flips: state.flips,
    }
}

/// Run to the stop condition without observation.
pub fn run(state: RunState, stop: &StopCondition) -> RunResult {
    run_observed(state, stop, &[], |_, _| {}, |_, _| {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::density::DensityVector;
    use crate::model::graph::Graph;
    use std::sync::Arc;

    fn state_on(
        graph: Graph,
        opinions: Vec<u8>,
        f: u32,
        theta: u32,
        seed: u64,
        replicate: u64,
    ) -> RunState {
        let params = Params::new(f, theta).unwrap();
        let config = Configuration::new(Arc::new(graph), opinions, f).unwrap();
        RunState::new(params, config, replicate_rng(seed, replicate))
    }

    #[test]
    fn waiting_time_matches_superposed_rate() {
        // Two directed arrows on path(2): global rate 2, mean waiting 1/2.
        let mut st = state_on(Graph::path(2).unwrap(), vec![1, 1], 2, 1, 99, 0);
        let steps = 100_000;
        let mut last = 0.0;
        let mut total = 0.0;
        for _ in 0..steps {
            let ev = st.step();
            total += ev.time - last;
            last = ev.time;
        }
        let mean = total / steps as f64;
        let sigma = 0.5 / (steps as f64).sqrt();
        assert!((mean - 0.5).abs() < 5.0 * sigma, "mean waiting {mean}");
    }

    #[test]
    fn frozen_configuration_only_advances_time() {
        let mut st = state_on(Graph::path(2).unwrap(), vec![1, 3], 3, 1, 3, 0);
        assert!(st.is_absorbed());
        let mut prev = 0.0;
        for _ in 0..200 {
            let ev = st.step();
            assert!(ev.time > prev);
            prev = ev.time;
            assert!(!ev.active);
        }
        assert_eq!(st.config().opinions(), &[1, 3]);
        assert_eq!(st.flips(), &[0, 0]);
    }

    #[test]
    fn monochromatic_cycle_never_flips() {
        let mut st = state_on(Graph::cycle(3).unwrap(), vec![2, 2, 2], 3, 1, 4, 0);
        for _ in 0..300 {
            st.step();
        }
        assert_eq!(st.flips(), &[0, 0, 0]);
        assert!(st.config().is_consensus());
    }

    #[test]
    fn two_vertex_voter_always_reaches_consensus() {
        for replicate in 0..50 {
            let st = state_on(Graph::path(2).unwrap(), vec![1, 2], 2, 1, 11, replicate);
            let result = run(st, &StopCondition::absorption());
            assert_eq!(result.reason, StopReason::Consensus);
            assert!(result.config.is_consensus());
        }
    }

    #[test]
    fn absorbing_start_stops_immediately() {
        let g = Graph::cycle(4).unwrap();
        let st = state_on(g, vec![1, 3, 1, 3], 4, 1, 5, 0);
        let result = run(st, &StopCondition::absorption());
        assert_eq!(result.events, 0);
        assert_eq!(result.reason, StopReason::Absorbed);
    }

    #[test]
    fn event_budget_reported_distinctly() {
        let st = state_on(Graph::cycle(5).unwrap(), vec![1, 2, 3, 2, 1], 3, 1, 6, 0);
        let result = run(st, &StopCondition::absorption().with_event_budget(3));
        assert_eq!(result.reason, StopReason::EventBudget);
        assert_eq!(result.events, 3);
    }

    #[test]
    fn time_horizon_flushes_samples_and_pins_final_time() {
        let st = state_on(Graph::cycle(5).unwrap(), vec![1, 2, 3, 2, 1], 3, 1, 7, 0);
        let times = [0.0, 0.5, 1.0, 2.0];
        let mut seen = Vec::new();
        let result = run_observed(
            st,
            &StopCondition::time_horizon(2.0),
            &times,
            |s, state| seen.push((s, state.config().opinions().to_vec())),
            |_, _| {},
        );
        assert_eq!(seen.len(), times.len());
        assert_eq!(seen[0].0, 0.0);
        assert!(matches!(
            result.reason,
            StopReason::TimeHorizon | StopReason::Consensus | StopReason::Absorbed
        ));
        if result.reason == StopReason::TimeHorizon {
            assert_eq!(result.final_time, 2.0);
        }
    }

    #[test]
    fn identical_seeds_reproduce_identical_runs() {
        let g = Arc::new(Graph::cycle(20).unwrap());
        let params = Params::new(4, 1).unwrap();
        let density = DensityVector::uniform(4);
        let make = || {
            let mut rng = replicate_rng(42, 3);
            let config = Configuration::sample(g.clone(), &density, &mut rng);
            RunState::new(params, config, rng)
        };
        let stop = StopCondition::time_horizon(50.0).with_event_budget(1_000_000);
        let a = run(make(), &stop);
        let b = run(make(), &stop);
        assert_eq!(a, b);
        assert_eq!(a.final_time.to_bits(), b.final_time.to_bits());
    }

    #[test]
    fn voter_reduction_matches_unconditional_copy_pathwise() {
        // F <= theta + 1: every arrow is active, so the trajectory driven by
        // the same event stream must match a plain multitype voter model.
        let g = Arc::new(Graph::cycle(12).unwrap());
        let params = Params::new(3, 3).unwrap();
        assert!(params.is_voter_reduction());
        let density = DensityVector::uniform(3);
        let mut rng = replicate_rng(8, 0);
        let config = Configuration::sample(g.clone(), &density, &mut rng);
        let mut shadow = config.opinions().to_vec();
        let st = RunState::new(params, config, rng);
        run_observed(
            st,
            &StopCondition::time_horizon(30.0),
            &[],
            |_, _| {},
            |state, ev| {
                shadow[ev.target as usize] = shadow[ev.source as usize];
                assert!(ev.active);
                assert_eq!(state.config().opinions(), shadow.as_slice());
            },
        );
    }
}
