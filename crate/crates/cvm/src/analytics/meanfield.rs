//! Mean-field prediction for the three-opinion threshold-one system.
//!
//! The exponent `psi(rho2) = -1/8 + (2/pi^2) arccos((1 - 2 rho2)/sqrt 2)^2`
//! predicts equilibrium domain lengths of order `L^(2 psi)`. It is provided
//! as a reference curve only: the consensus lower bound proves domain
//! lengths scale like the population size instead, so the prediction fails
//! in the fluctuation regime.

use crate::error::{Error, Result};

pub fn mean_field_psi(rho2: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&rho2) {
        return Err(Error::Domain(format!("rho2 = {rho2} outside [0, 1]")));
    }
    let angle = ((1.0 - 2.0 * rho2) / std::f64::consts::SQRT_2).acos();
    Ok(-0.125 + (2.0 / (std::f64::consts::PI * std::f64::consts::PI)) * angle * angle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishes_at_zero() {
        // arccos(1/sqrt 2) = pi/4 cancels the -1/8 exactly.
        assert!(mean_field_psi(0.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn small_density_slope_is_two_over_pi() {
        let rho2 = 1e-4;
        let psi = mean_field_psi(rho2).unwrap();
        let approx = 2.0 * rho2 / std::f64::consts::PI;
        assert!((psi / approx - 1.0).abs() < 0.01, "psi={psi}, approx={approx}");
    }

    #[test]
    fn value_at_one_half() {
        // arccos(0) = pi/2 gives 1/2 - 1/8 = 3/8.
        assert!((mean_field_psi(0.5).unwrap() - 0.375).abs() < 1e-15);
    }

    #[test]
    fn rejects_out_of_domain() {
        assert!(mean_field_psi(-0.1).is_err());
        assert!(mean_field_psi(1.5).is_err());
    }
}
