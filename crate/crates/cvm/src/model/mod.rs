//! The constrained voter model on finite connected graphs: parameters,
//! initial distributions, graph topologies, configurations, and the exact
//! continuous-time engine.

pub mod config;
pub mod density;
pub mod engine;
pub mod graph;
pub mod params;
