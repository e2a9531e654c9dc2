//! Contribution lower bounds for the three pile-collision events under the
//! uniform initial distribution, and the grand fixation inequality they
//! assemble into.
//!
//! Event A: opposite-charge active piles collide and annihilate pairs.
//! Event B: same-charge active piles merge into a blockade.
//! Event C: an active pile feeds a same-charge blockade.

use crate::analytics::weights::expected_phi_uniform;
use crate::model::params::Params;
use crate::rational::{int, int128, Rational};
use num_traits::Zero;

/// The f(B) lower bound exists in two published variants that differ in one
/// coefficient; the grand inequality uses `Proof` (`2F - 5 theta - 2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FbVariant {
    /// Final coefficient `2F - 5 theta - 2`; consistent with the assembled
    /// inequality and the asymptotic slope.
    #[default]
    Proof,
    /// Final coefficient `2F - 5 theta - 1`.
    Statement,
}

fn f_a(f: i64, t: i64) -> Rational {
    int(t * (t + 1) * (2 * f * (2 * t + 1) - 3 * t * (t + 1))) / int(9 * f * f * f)
}

fn f_b(f: i64, t: i64, variant: FbVariant) -> Rational {
    let last = match variant {
        FbVariant::Proof => 2 * f - 5 * t - 2,
        FbVariant::Statement => 2 * f - 5 * t - 1,
    };
    int(t * (t + 1) * (3 * (t + 1) * last + 2 * (2 * t + 1) * (3 * t - f + 2)))
        / int(9 * f * f * f)
}

fn f_c(f: i64, t: i64) -> Rational {
    int(t * (t + 1)
        * (6 * f * (f - 2 * t - 1) - 2 * (2 * t + 1) * (2 * f - 2 * t - 1) + 9 * t * (t + 1)))
        / int(12 * f * f * f)
}

/// Lower bounds `(f(A), f(B), f(C))` with the proof variant of f(B).
pub fn contribution_bounds_uniform(params: &Params) -> (Rational, Rational, Rational) {
    contribution_bounds_uniform_with(params, FbVariant::Proof)
}

pub fn contribution_bounds_uniform_with(
    params: &Params,
    variant: FbVariant,
) -> (Rational, Rational, Rational) {
    let f = i64::from(params.f());
    let t = i64::from(params.theta());
    (f_a(f, t), f_b(f, t, variant), f_c(f, t))
}

/// The grand fixation inequality's left-hand side, an integer-valued
/// rational:
///
/// ```text
/// 12F((F-2t-1)(F-2t)(F-2t+1) - 6t^2(F-t))
///   + 4t(t+1)(2F(2t+1) - 3t(t+1))
///   + 4t(t+1)(3(t+1)(2F-5t-2) + 2(2t+1)(3t-F+2))
///   + 3t(t+1)(6F(F-2t-1) - 2(2t+1)(2F-2t-1) + 9t(t+1))
/// ```
///
/// Equals `36 F^3 (E phi + f(A) + f(B) + f(C))` exactly (proof variant).
pub fn grand_margin(params: &Params) -> Rational {
    let f = i128::from(params.f());
    let t = i128::from(params.theta());
    let m = f - 2 * t;
    let term1 = 12 * f * ((m - 1) * m * (m + 1) - 6 * t * t * (f - t));
    let term2 = 4 * t * (t + 1) * (2 * f * (2 * t + 1) - 3 * t * (t + 1));
    let term3 =
        4 * t * (t + 1) * (3 * (t + 1) * (2 * f - 5 * t - 2) + 2 * (2 * t + 1) * (3 * t - f + 2));
    let term4 = 3
        * t
        * (t + 1)
        * (6 * f * (f - 2 * t - 1) - 2 * (2 * t + 1) * (2 * f - 2 * t - 1) + 9 * t * (t + 1));
    int128(term1 + term2 + term3 + term4)
}

/// Fixation is proved for the uniform initial distribution when the grand
/// margin is strictly positive. Returns the predicate and the exact margin.
pub fn fixation_predicate_uniform(params: &Params) -> (bool, Rational) {
    let margin = grand_margin(params);
    (margin > Rational::zero(), margin)
}

/// The normalized decomposition identity behind [`grand_margin`], exposed so
/// the two computation routes can be compared exactly.
pub fn margin_from_contributions(params: &Params) -> Rational {
    let f = i64::from(params.f());
    let (fa, fb, fc) = contribution_bounds_uniform(params);
    int(36 * f * f * f) * (expected_phi_uniform(params) + fa + fb + fc)
}

// Used by the asymptotic-slope consistency test.
#[allow(dead_code)]
pub(crate) fn brute_contribution_b(f: i64, t: i64) -> Rational {
    // 4/3 F^-3 sum_{k=1}^{theta} k (theta + 1 - k)(F - 2 theta - 1 + k)
    let mut s = 0i64;
    for k in 1..=t {
        s += k * (t + 1 - k) * (f - 2 * t - 1 + k);
    }
    int(4 * s) / int(3 * f * f * f)
}
