//! Simulation and analysis toolkit for the constrained voter model.
//!
//! A population of agents sits on a finite connected graph. Each agent holds
//! an opinion from `{1, ..., F}` and looks at each neighbor at rate one; it
//! imitates the neighbor if and only if the opinion distance is at most the
//! confidence threshold `theta`. The crate provides:
//!
//! * [`model`] — the opinion process itself: parameters, product-measure
//!   initial states, finite graphs, and an exact event-driven engine.
//! * [`edges`] — the charged-particle edge process coupled to the opinion
//!   process on cycles and paths, plus ancestry tracking.
//! * [`analytics`] — exact rational evaluation of the closed-form weight
//!   function machinery: expected edge weights, contribution lower bounds,
//!   the grand fixation inequality, asymptotic critical slopes, and the
//!   four-opinion threshold-one polynomial with certified root brackets.
//! * [`estimators`] — Monte Carlo statistics connecting trajectories to the
//!   theory: consensus probability, clustering and particle-density curves,
//!   martingale conservation checks, changeover counts and their exact
//!   distribution, weight-window scans, and domain lengths.

pub mod analytics;
pub mod edges;
pub mod error;
pub mod estimators;
pub mod model;
pub mod rational;

pub use error::{Error, Result};
pub use model::config::Configuration;
pub use model::density::{DensityVector, SymmetricDensity};
pub use model::engine::{
    replicate_rng, run, run_observed, ArrowEvent, RunResult, RunRng, RunState, StopCondition,
    StopReason,
};
pub use model::graph::{Graph, Topology};
pub use model::params::Params;
pub use rational::Rational;
