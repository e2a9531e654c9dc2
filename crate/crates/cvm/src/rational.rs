//! Exact rational arithmetic used throughout the analytics.
//!
//! Densities and every closed-form expression are evaluated over
//! arbitrary-precision rationals so that formula cross-checks are exact
//! equalities, not tolerance comparisons.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A wide integer as a rational (parameter sweeps reach `F^4`-sized terms).
pub fn int128(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Nearest `f64` to the rational (for reporting only).
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// Render as `p/q` (always with an explicit denominator, e.g. `0/1`, `-3/8`).
pub fn display_fraction(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}
