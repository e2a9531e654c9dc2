//! The per-edge weight function and its exact expected value under product
//! initial distributions.
//!
//! Each initially active particle counts -1; a blockade of `j > theta`
//! particles counts `j - 2 theta` (it can absorb at least `j - theta`
//! active particles before at most `theta` of its own go live). A positive
//! expected weight per edge is the engine of every fixation criterion here.

use crate::error::{Error, Result};
use crate::model::density::{DensityVector, SymmetricDensity};
use crate::model::params::Params;
use crate::rational::{int, rat, Rational};
use num_traits::Zero;

/// Pile-size weights for a fixed threshold.
#[derive(Clone, Copy, Debug)]
pub struct WeightFunction {
    theta: u32,
}

impl WeightFunction {
    pub fn new(theta: u32) -> Self {
        WeightFunction { theta }
    }

    /// Weight of a pile of `j` particles: `0` at zero, `-j` while active,
    /// `j - 2 theta` for blockades.
    pub fn weight(&self, j: u32) -> i64 {
        if j == 0 {
            0
        } else if j <= self.theta {
            -i64::from(j)
        } else {
            i64::from(j) - 2 * i64::from(self.theta)
        }
    }

    /// Weight of a signed pile value.
    pub fn weight_of_pile(&self, xi: i32) -> i64 {
        self.weight(xi.unsigned_abs())
    }
}

/// `s_1, s_2, s_3`: sums of j, j^2, j^3 for j = 1..=theta, in closed form.
pub fn sums(theta: u32) -> (i64, i64, i64) {
    let t = i64::from(theta);
    (s1(t), s2(t), s3(t))
}

/// Closed form of `s_1` as a polynomial. The expected-weight formula below
/// evaluates it at `F - 2 theta - 2`, which may be negative; the polynomial
/// extension (not the empty-sum convention) is what keeps the formula an
/// identity across every parameter pair.
pub(crate) fn s1(m: i64) -> i64 {
    m * (m + 1) / 2
}

pub(crate) fn s2(m: i64) -> i64 {
    m * (m + 1) * (2 * m + 1) / 6
}

pub(crate) fn s3(m: i64) -> i64 {
    m * m * (m + 1) * (m + 1) / 4
}

/// `P(|xi_0(e)| = j) = 2 sum_i rho_i rho_{i+j}` for a product initial
/// distribution. `j = 0` gives the concordant-edge probability.
pub fn edge_type_prob(params: &Params, density: &DensityVector, j: u32) -> Result<Rational> {
    let f = params.f();
    if density.f() != f {
        return Err(Error::InvalidDensity(format!(
            "density has {} opinions, parameters have {f}",
            density.f()
        )));
    }
    if j >= f {
        return Err(Error::Domain(format!("pile size {j} out of range for F={f}")));
    }
    if j == 0 {
        let mut s = Rational::zero();
        for i in 1..=f {
            let r = density.density_of(i);
            s += r * r;
        }
        return Ok(s);
    }
    let mut s = Rational::zero();
    for i in 1..=(f - j) {
        s += density.density_of(i) * density.density_of(i + j);
    }
    Ok(rat(2, 1) * s)
}

/// Closed form of the same probability under a symmetric density:
/// `4 rho1 rho2 + 2 (F - j - 2) rho2^2` for `j < F - 1` and `2 rho1^2` at
/// `j = F - 1`. Always equals [`edge_type_prob`] on the expanded vector.
pub fn edge_type_prob_symmetric(sym: &SymmetricDensity, j: u32) -> Result<Rational> {
    let f = sym.f();
    if j < 1 || j >= f {
        return Err(Error::Domain(format!("pile size {j} out of range for F={f}")));
    }
    if j == f - 1 {
        Ok(rat(2, 1) * sym.rho1() * sym.rho1())
    } else {
        Ok(rat(4, 1) * sym.rho1() * sym.rho2()
            + rat(2, 1) * int(i64::from(f) - i64::from(j) - 2) * sym.rho2() * sym.rho2())
    }
}

/// `Q(X, Y)` such that the expected edge weight is `Q(rho1, rho2) / 3` under
/// a symmetric density.
fn q_value(f: u32, theta: u32, x: &Rational, y: &Rational) -> Rational {
    let f = i64::from(f);
    let t = i64::from(theta);
    let term1 = int(-6) * y * (int(2) * x + int(f - t - 2) * y) * int(t * t);
    let term2 =
        int(2) * y * (int(6) * x + int(f - 2 * t - 3) * y) * int(s1(f - 2 * t - 2));
    let term3 = int(6) * x * x * int(f - 2 * t - 1);
    term1 + term2 + term3
}

/// Exact expected weight of one edge, `E phi(e) = Q(rho1, rho2) / 3`.
/// Equals `sum_j weight(j) * P(|xi_0| = j)` for every parameter pair.
pub fn expected_phi(params: &Params, sym: &SymmetricDensity) -> Result<Rational> {
    if sym.f() != params.f() {
        return Err(Error::InvalidDensity(format!(
            "density has {} opinions, parameters have {}",
            sym.f(),
            params.f()
        )));
    }
    Ok(q_value(params.f(), params.theta(), sym.rho1(), sym.rho2()) / int(3))
}

/// The uniform-density specialization:
/// `(1/3) F^-2 (-6 (F - theta) theta^2 + (F-2theta-1)(F-2theta)(F-2theta+1))`.
pub fn expected_phi_uniform(params: &Params) -> Rational {
    let f = i64::from(params.f());
    let t = i64::from(params.theta());
    let m = f - 2 * t;
    int(-6 * (f - t) * t * t + (m - 1) * m * (m + 1)) / int(3 * f * f)
}

/// Coefficients `(a2, a1, a0)` of `E phi(e)` as a quadratic in `rho2` along
/// the symmetric-density line `2 rho1 + (F - 2) rho2 = 1`.
pub fn expected_phi_rho2_polynomial(params: &Params) -> (Rational, Rational, Rational) {
    let f = params.f();
    let theta = params.theta();
    let eval = |y: Rational| -> Rational {
        let x = (Rational::from_integer(1.into()) - int(i64::from(f) - 2) * &y) / int(2);
        q_value(f, theta, &x, &y) / int(3)
    };
    let f0 = eval(Rational::zero());
    let f1 = eval(int(1));
    let f2 = eval(int(2));
    // quadratic through (0, f0), (1, f1), (2, f2)
    let a2 = (&f2 - int(2) * &f1 + &f0) / int(2);
    let a1 = &f1 - &f0 - &a2;
    (a2, a1, f0)
}
