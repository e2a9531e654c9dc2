//! Exact evaluation of the closed-form fluctuation/fixation machinery.
//!
//! Everything here is computed over arbitrary-precision rationals; only the
//! mean-field arccosine and the reported locations of polynomial roots pass
//! through floating point, and roots always come with exact sign-change
//! certificates.

pub mod contributions;
pub mod meanfield;
pub mod phase;
pub mod roots;
pub mod special;
pub mod weights;

pub use contributions::{
    contribution_bounds_uniform, contribution_bounds_uniform_with, fixation_predicate_uniform,
    grand_margin, FbVariant,
};
pub use meanfield::mean_field_psi;
pub use phase::{phase_diagram, PhaseCell, PhaseClass};
pub use roots::{asymptotic_slope_roots, bisect_sign_change, eval_int_poly, RootCertificate};
pub use special::{
    combined_margin_special, contribution_bounds_special, expected_phi_special,
    fixation_threshold_special, polynomial_p, root_p, P_COEFFS,
};
pub use weights::{
    edge_type_prob, edge_type_prob_symmetric, expected_phi, expected_phi_rho2_polynomial,
    expected_phi_uniform, sums, WeightFunction,
};
