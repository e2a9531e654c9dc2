use crate::error::{Error, Result};
use crate::rational::{rat, to_f64, Rational};
use num_traits::{One, Zero};

/// Initial opinion distribution `rho = (rho_1, ..., rho_F)`, stored as exact
/// rationals. Entries are nonnegative and sum to one exactly; the standing
/// assumption of the theory (every entry positive) can be asserted with
/// [`DensityVector::is_strictly_positive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityVector {
    rho: Vec<Rational>,
}

impl DensityVector {
    pub fn new(rho: Vec<Rational>) -> Result<Self> {
        if rho.len() < 2 {
            return Err(Error::InvalidDensity(format!(
                "need at least two opinions, got {}",
                rho.len()
            )));
        }
        if rho.iter().any(|r| r < &Rational::zero()) {
            return Err(Error::InvalidDensity("negative entry".into()));
        }
        let total: Rational = rho.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDensity(format!(
                "entries sum to {total}, expected 1"
            )));
        }
        Ok(DensityVector { rho })
    }

    pub fn uniform(f: u32) -> Self {
        assert!(f >= 2);
        DensityVector {
            rho: vec![rat(1, i64::from(f)); f as usize],
        }
    }

    /// Density concentrated on a single opinion (degenerate; useful for
    /// deterministic initial states).
    pub fn point_mass(f: u32, j: u32) -> Self {
        assert!(f >= 2 && (1..=f).contains(&j));
        let mut rho = vec![Rational::zero(); f as usize];
        rho[(j - 1) as usize] = Rational::one();
        DensityVector { rho }
    }

    pub fn f(&self) -> u32 {
        self.rho.len() as u32
    }

    /// Density of opinion `j` (1-based).
    pub fn density_of(&self, j: u32) -> &Rational {
        &self.rho[(j - 1) as usize]
    }

    pub fn entries(&self) -> &[Rational] {
        &self.rho
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.rho.iter().all(|r| r > &Rational::zero())
    }

    /// Cumulative table for sampling, converted to `f64` once per run.
    pub fn cumulative_f64(&self) -> Vec<f64> {
        let mut acc = Rational::zero();
        self.rho
            .iter()
            .map(|r| {
                acc += r.clone();
                to_f64(&acc)
            })
            .collect()
    }
}

/// Symmetric density: `rho_1 = rho_F` and `rho_2 = ... = rho_{F-1}`, hence
/// `2 rho_1 + (F - 2) rho_2 = 1`. `rho_2 = 0` is allowed for limiting
/// analytics but such a vector should not be sampled from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricDensity {
    f: u32,
    rho1: Rational,
    rho2: Rational,
}

impl SymmetricDensity {
    pub fn new(f: u32, rho1: Rational, rho2: Rational) -> Result<Self> {
        if f < 2 {
            return Err(Error::InvalidDensity("need F >= 2".into()));
        }
        if rho1 <= Rational::zero() {
            return Err(Error::InvalidDensity("rho1 must be positive".into()));
        }
        if rho2 < Rational::zero() {
            return Err(Error::InvalidDensity("rho2 must be nonnegative".into()));
        }
        let total = rat(2, 1) * &rho1 + int_f(f) * &rho2;
        if !total.is_one() {
            return Err(Error::InvalidDensity(format!(
                "2 rho1 + (F-2) rho2 = {total}, expected 1"
            )));
        }
        Ok(SymmetricDensity { f, rho1, rho2 })
    }

    /// Build from `rho_2` alone, solving `rho_1 = (1 - (F - 2) rho_2) / 2`.
    pub fn from_rho2(f: u32, rho2: Rational) -> Result<Self> {
        if f < 2 {
            return Err(Error::InvalidDensity("need F >= 2".into()));
        }
        let rho1 = (Rational::one() - int_f(f) * &rho2) / rat(2, 1);
        SymmetricDensity::new(f, rho1, rho2)
    }

    pub fn uniform(f: u32) -> Self {
        assert!(f >= 2);
        SymmetricDensity {
            f,
            rho1: rat(1, i64::from(f)),
            rho2: rat(1, i64::from(f)),
        }
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn rho1(&self) -> &Rational {
        &self.rho1
    }

    pub fn rho2(&self) -> &Rational {
        &self.rho2
    }

    pub fn to_density(&self) -> DensityVector {
        let mut rho = vec![self.rho2.clone(); self.f as usize];
        rho[0] = self.rho1.clone();
        rho[(self.f - 1) as usize] = self.rho1.clone();
        DensityVector::new(rho).expect("symmetric density is valid by construction")
    }
}

fn int_f(f: u32) -> Rational {
    rat(i64::from(f) - 2, 1)
}
