//! Charged-particle edge process coupled to the opinion process on cycles
//! and paths, plus ancestry (active-path origin) tracking.

pub mod ancestry;
pub mod piles;

pub use ancestry::AncestryState;
pub use piles::{classify_pile, EdgeConfiguration, EdgeStep, ParticleStats, PileClass};

use crate::model::config::Configuration;
use crate::model::params::Params;

/// Vertexwise indicator of extremist membership: `1` where the opinion is
/// outside the centrist set, `0` where it is within the threshold of every
/// opinion. Driving a two-opinion voter model with the same event stream
/// reproduces this projection pathwise whenever `F <= 2 theta + 1`.
pub fn zeta_projection(config: &Configuration, params: &Params) -> Vec<u8> {
    config
        .opinions()
        .iter()
        .map(|&o| u8::from(!params.is_centrist(u32::from(o))))
        .collect()
}
