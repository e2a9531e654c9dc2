//! The four-opinion, threshold-one system: sharpened contribution bounds as
//! functions of the middle density `rho2`, the degree-six criterion
//! polynomial, and its certified root.

use crate::analytics::roots::{bisect_sign_change, default_tolerance, eval_int_poly, RootCertificate};
use crate::error::{Error, Result};
use crate::rational::{int, rat, Rational};
use num_traits::Zero;

/// Expected edge weight for `F = 4`, `theta = 1` along the symmetric line:
/// `4 rho2^2 - 4 rho2 + 1/2`.
pub fn expected_phi_special(rho2: &Rational) -> Rational {
    int(4) * rho2 * rho2 - int(4) * rho2 + rat(1, 2)
}

fn check_rho2(rho2: &Rational) -> Result<()> {
    if rho2 < &Rational::zero() || rho2 > &rat(1, 2) {
        return Err(Error::Domain(format!("rho2 = {rho2} outside [0, 1/2]")));
    }
    Ok(())
}

/// Sharpened lower bounds `(f(A), f(B), f(C))` for `F = 4`, `theta = 1`,
/// evaluated exactly at `rho2 in [0, 1/2]`.
pub fn contribution_bounds_special(rho2: &Rational) -> Result<(Rational, Rational, Rational)> {
    check_rho2(rho2)?;
    let half_minus = rat(1, 2) - rho2;
    let one_minus = int(1) - rho2;

    // f(A) >= (181/225) r^2
    //         + 2 (1/2 - r)^2 r (1 - (26/75) r - 2 r (1-r) / (5r + 20))
    let fa = rat(181, 225) * rho2 * rho2
        + int(2)
            * &half_minus
            * &half_minus
            * rho2
            * (int(1)
                - rat(26, 75) * rho2
                - int(2) * rho2 * &one_minus / (int(5) * rho2 + int(20)));

    // f(B) >= 4 (1/2 - r) r^2 (203/225 - (13/75) r + r (1-r) / (5r + 20))
    let fb = int(4)
        * &half_minus
        * rho2
        * rho2
        * (rat(203, 225) - rat(13, 75) * rho2 + rho2 * &one_minus / (int(5) * rho2 + int(20)));

    // f(C) >= 4 (1/2 - r)^2 r (1 - (5/9) r - 2 r (1-r) / (3r + 6))
    let fc = int(4)
        * &half_minus
        * &half_minus
        * rho2
        * (int(1) - rat(5, 9) * rho2 - int(2) * rho2 * &one_minus / (int(3) * rho2 + int(6)));

    Ok((fa, fb, fc))
}

/// `(5 rho2 + 20)(3 rho2 + 6)(E phi + f(A) + f(B) + f(C))`: the cleared-
/// denominator fixation margin assembled from the sharpened bounds.
pub fn combined_margin_special(rho2: &Rational) -> Result<Rational> {
    let (fa, fb, fc) = contribution_bounds_special(rho2)?;
    let total = expected_phi_special(rho2) + fa + fb + fc;
    Ok((int(5) * rho2 + int(20)) * (int(3) * rho2 + int(6)) * total)
}

/// Coefficients (ascending) of the published degree-six criterion
/// polynomial `P`.
pub const P_COEFFS: [i64; 7] = [9000, -39150, -37635, 115251, -23080, -8204, 3000];

/// Exact evaluation of `P` at a rational point.
pub fn polynomial_p(x: &Rational) -> Rational {
    eval_int_poly(&P_COEFFS, x)
}

/// Certified root of `P` in `(0, 1/2)`. `P` is decreasing there with
/// `P(0) = 9000 > 0 > P(1/2)`, so the root is unique.
pub fn root_p() -> RootCertificate {
    bisect_sign_change(polynomial_p, Rational::zero(), rat(1, 2), &default_tolerance())
        .expect("P brackets a sign change on (0, 1/2)")
}

/// Fixation threshold for the four-opinion threshold-one system: densities
/// `rho2` strictly below this root make the criterion margin positive.
pub fn fixation_threshold_special() -> RootCertificate {
    root_p()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::to_f64;
    use num_traits::Signed;

    #[test]
    fn expected_phi_special_matches_general_formula() {
        use crate::analytics::weights::expected_phi;
        use crate::model::density::SymmetricDensity;
        use crate::model::params::Params;
        let p = Params::new(4, 1).unwrap();
        for num in 0..50i64 {
            let rho2 = rat(num, 100);
            let sym = SymmetricDensity::from_rho2(4, rho2.clone()).unwrap();
            assert_eq!(
                expected_phi(&p, &sym).unwrap(),
                expected_phi_special(&rho2),
                "rho2={num}/100"
            );
        }
    }

    #[test]
    fn contributions_vanish_at_zero() {
        let (fa, fb, fc) = contribution_bounds_special(&Rational::zero()).unwrap();
        assert!(fa.is_zero() && fb.is_zero() && fc.is_zero());
    }

    #[test]
    fn contribution_a_pinned_value_at_one_quarter() {
        let (fa, _, _) = contribution_bounds_special(&rat(1, 4)).unwrap();
        assert_eq!(fa, rat(479, 6120));
        assert!((to_f64(&fa) - 0.07827).abs() < 5e-6);
    }

    #[test]
    fn contributions_nonnegative_on_the_domain() {
        // 10^-3 grid over [0, 1/2]
        for num in 0..=500i64 {
            let rho2 = rat(num, 1000);
            let (fa, fb, fc) = contribution_bounds_special(&rho2).unwrap();
            assert!(fa >= Rational::zero(), "fa at {num}/1000");
            assert!(fb >= Rational::zero(), "fb at {num}/1000");
            assert!(fc >= Rational::zero(), "fc at {num}/1000");
        }
    }

    #[test]
    fn rejects_out_of_domain_density() {
        assert!(contribution_bounds_special(&rat(3, 4)).is_err());
        assert!(contribution_bounds_special(&rat(-1, 10)).is_err());
    }

    #[test]
    fn polynomial_p_pinned_values() {
        assert_eq!(polynomial_p(&Rational::zero()), int(9000));
        assert_eq!(polynomial_p(&rat(1, 2)), rat(-57835, 8)); // -7229.375
        assert!(polynomial_p(&rat(2134, 10000)) > Rational::zero());
    }

    #[test]
    fn polynomial_p_is_decreasing_on_the_interval() {
        // 10^-4-resolution grid near the root region plus a coarse sweep.
        let mut prev = polynomial_p(&Rational::zero());
        for num in 1..=500i64 {
            let x = rat(num, 1000);
            let here = polynomial_p(&x);
            assert!(here < prev, "not decreasing at {num}/1000");
            prev = here;
        }
        let mut prev = polynomial_p(&rat(2000, 10000));
        for num in 2001..=2300i64 {
            let here = polynomial_p(&rat(num, 10000));
            assert!(here < prev, "not decreasing at {num}/10000");
            prev = here;
        }
    }

    #[test]
    fn root_certificate_properties() {
        let cert = root_p();
        assert!(cert.width() <= default_tolerance());
        assert!(polynomial_p(&cert.lo) > Rational::zero());
        assert!(polynomial_p(&cert.hi) < Rational::zero());
        assert!(cert.lo > rat(2134, 10000));
        assert!(cert.hi < rat(1, 2));
        // strictly above the weight-only threshold (2 - sqrt 2)/4 ~ 0.1464
        assert!(cert.value() > 0.1464);
        assert!((cert.value() - 0.2134080).abs() < 1e-6);
    }

    #[test]
    fn combined_margin_changes_sign_next_to_the_root_of_p() {
        // The product assembled from the displayed bounds is not literally
        // the published polynomial, but its sign change sits within 10^-3 of
        // the certified root and the signs agree outside that window.
        let oracle_root = bisect_sign_change(
            |x| combined_margin_special(x).unwrap(),
            Rational::zero(),
            rat(1, 2),
            &default_tolerance(),
        )
        .unwrap();
        let p_root = root_p();
        let gap = (oracle_root.midpoint() - p_root.midpoint()).abs();
        assert!(gap < rat(1, 1000), "gap = {}", to_f64(&gap));
        assert!(oracle_root.value() > 0.2134);
        for num in (0..=500i64).filter(|n| (n - 214).abs() > 2) {
            let x = rat(num, 1000);
            let a = polynomial_p(&x) > Rational::zero();
            let b = combined_margin_special(&x).unwrap() > Rational::zero();
            assert_eq!(a, b, "sign mismatch at {num}/1000");
        }
    }

    #[test]
    fn combined_margin_is_negative_at_one_quarter() {
        assert!(combined_margin_special(&rat(1, 4)).unwrap() < Rational::zero());
        assert!(polynomial_p(&rat(1, 4)) < Rational::zero());
    }
}
