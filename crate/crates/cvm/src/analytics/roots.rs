//! Root isolation by bisection with exact sign-change certificates.

use crate::error::{Error, Result};
use crate::rational::{int, rat, to_f64, Rational};
use num_traits::Zero;

/// Certified bracket around a root: the function values at `lo` and `hi`
/// have strictly opposite signs and `hi - lo` is at most the requested
/// tolerance.
#[derive(Clone, Debug, PartialEq)]
pub struct RootCertificate {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootCertificate {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    /// Floating approximation of the root location.
    pub fn value(&self) -> f64 {
        to_f64(&self.midpoint())
    }
}

/// Default certification width, `10^-12`.
pub fn default_tolerance() -> Rational {
    rat(1, 1_000_000_000_000)
}

/// Bisect `f` on `[lo, hi]`, which must bracket a sign change, until the
/// bracket is no wider than `tol`. Evaluation is exact, so the returned
/// certificate is exact.
pub fn bisect_sign_change(
    f: impl Fn(&Rational) -> Rational,
    mut lo: Rational,
    mut hi: Rational,
    tol: &Rational,
) -> Result<RootCertificate> {
    let f_lo = f(&lo);
    let f_hi = f(&hi);
    if f_lo.is_zero() || f_hi.is_zero() || (f_lo > Rational::zero()) == (f_hi > Rational::zero()) {
        return Err(Error::Domain(
            "bisection endpoints do not bracket a sign change".into(),
        ));
    }
    let lo_positive = f_lo > Rational::zero();
    while (&hi - &lo) > *tol {
        let mid = (&lo + &hi) / int(2);
        let fm = f(&mid);
        if fm.is_zero() {
            // Landed exactly on a root (only possible for rational roots):
            // return the tightest bracket straddling it.
            let half = tol / int(4);
            let lo2 = &mid - &half;
            let hi2 = &mid + &half;
            if (f(&lo2) > Rational::zero()) != (f(&hi2) > Rational::zero()) {
                return Ok(RootCertificate { lo: lo2, hi: hi2 });
            }
            return Err(Error::Domain("degenerate sign pattern at exact root".into()));
        }
        if (fm > Rational::zero()) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RootCertificate { lo, hi })
}

/// Evaluate an integer-coefficient polynomial (ascending order) at an exact
/// rational point.
pub fn eval_int_poly(coeffs: &[i64], x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for &c in coeffs.iter().rev() {
        acc = acc * x + int(c);
    }
    acc
}

/// Expanded form of `(1 - 2X)^3 - 6 X^2 (1 - X)`: the large-F sign of the
/// expected edge weight along `theta = XF`.
pub const SLOPE_WEIGHT_ONLY: [i64; 4] = [1, -6, 6, -2];

/// Expanded form of the large-F limit of the grand fixation margin divided
/// by `F^4` along `theta = XF` (equivalently `12 (1 - 2X)^3 - 9 X^2 (6 - 4X
/// - 3X^2)`).
pub const SLOPE_WITH_CONTRIBUTIONS: [i64; 5] = [12, -72, 90, -60, 27];

/// The two asymptotic critical slopes `(c_minus, c_plus)`: the unique roots
/// in `(0, 1/2)` of the weight-only polynomial and of the margin-limit
/// polynomial. Both polynomials are positive at 0 and negative at 1/2, so
/// the brackets are guaranteed.
pub fn asymptotic_slope_roots() -> (RootCertificate, RootCertificate) {
    let tol = default_tolerance();
    let c_minus = bisect_sign_change(
        |x| eval_int_poly(&SLOPE_WEIGHT_ONLY, x),
        Rational::zero(),
        rat(1, 2),
        &tol,
    )
    .expect("weight-only slope polynomial brackets a sign change");
    let c_plus = bisect_sign_change(
        |x| eval_int_poly(&SLOPE_WITH_CONTRIBUTIONS, x),
        Rational::zero(),
        rat(1, 2),
        &tol,
    )
    .expect("margin-limit slope polynomial brackets a sign change");
    (c_minus, c_plus)
}
