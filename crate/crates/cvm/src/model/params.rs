use crate::error::{Error, Result};
use crate::model::density::DensityVector;
use crate::rational::Rational;
use num_traits::Zero;

/// Model parameters: number of opinions `F` and confidence threshold `theta`.
///
/// Two agents interact only when their opinion distance is at most `theta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    f: u32,
    theta: u32,
}

impl Params {
    pub fn new(f: u32, theta: u32) -> Result<Self> {
        if f < 2 {
            return Err(Error::InvalidParams(format!("need F >= 2, got F = {f}")));
        }
        if theta < 1 {
            return Err(Error::InvalidParams(format!(
                "need theta >= 1, got theta = {theta}"
            )));
        }
        Ok(Params { f, theta })
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    /// With `F <= theta + 1` every pair of opinions is within the threshold,
    /// so the dynamics is the basic multitype voter model.
    pub fn is_voter_reduction(&self) -> bool {
        self.f <= self.theta + 1
    }

    /// `F <= 2 theta + 1`: the regime where the one-dimensional system
    /// fluctuates and clusters (nonempty centrist set).
    pub fn in_fluctuation_regime(&self) -> bool {
        self.f <= 2 * self.theta + 1
    }

    /// True iff opinion `j` is within the threshold of every opinion in
    /// `{1, ..., F}`. Equivalent to `F - theta <= j <= theta + 1`.
    pub fn is_centrist(&self, j: u32) -> bool {
        debug_assert!((1..=self.f).contains(&j));
        j + self.theta >= self.f && j <= self.theta + 1
    }

    /// The centrist opinions `{F - theta, ..., theta + 1}` (ascending).
    /// Empty exactly when `F > 2 theta + 1`.
    pub fn centrist_set(&self) -> Vec<u32> {
        (1..=self.f).filter(|&j| self.is_centrist(j)).collect()
    }
}

/// Total initial density of centrist opinions; the consensus-probability
/// lower bound for the process on finite connected graphs in the
/// fluctuation regime. Zero when the centrist set is empty.
pub fn rho_c(params: &Params, density: &DensityVector) -> Rational {
    let mut sum = Rational::zero();
    for j in params.centrist_set() {
        sum += density.density_of(j).clone();
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    /// Independent characterization: `j` is centrist iff it is within
    /// `theta` of every opinion.
    fn centrist_oracle(p: &Params) -> Vec<u32> {
        (1..=p.f())
            .filter(|&j| (1..=p.f()).all(|i| i.abs_diff(j) <= p.theta()))
            .collect()
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(Params::new(1, 1).is_err());
        assert!(Params::new(3, 0).is_err());
        assert!(Params::new(2, 1).is_ok());
    }

    #[test]
    fn centrist_set_examples() {
        assert_eq!(Params::new(3, 1).unwrap().centrist_set(), vec![2]);
        assert_eq!(Params::new(2, 1).unwrap().centrist_set(), vec![1, 2]);
        assert!(Params::new(4, 1).unwrap().centrist_set().is_empty());
        // Interval notation degenerates to a single opinion here.
        assert_eq!(Params::new(5, 2).unwrap().centrist_set(), vec![3]);
    }

    #[test]
    fn centrist_set_matches_characterization_exhaustively() {
        for f in 2..=40 {
            for theta in 1..=40 {
                let p = Params::new(f, theta).unwrap();
                assert_eq!(p.centrist_set(), centrist_oracle(&p), "F={f} theta={theta}");
                assert_eq!(p.centrist_set().is_empty(), f > 2 * theta + 1);
            }
        }
    }

    #[test]
    fn regime_flags() {
        let p = Params::new(3, 1).unwrap();
        assert!(!p.is_voter_reduction());
        assert!(p.in_fluctuation_regime());
        let q = Params::new(2, 1).unwrap();
        assert!(q.is_voter_reduction());
        let r = Params::new(4, 1).unwrap();
        assert!(!r.in_fluctuation_regime());
    }

    #[test]
    fn rho_c_examples() {
        let uniform3 = DensityVector::uniform(3);
        assert_eq!(rho_c(&Params::new(3, 1).unwrap(), &uniform3), rat(1, 3));
        let uniform5 = DensityVector::uniform(5);
        assert_eq!(rho_c(&Params::new(5, 3).unwrap(), &uniform5), rat(3, 5));
        let uniform4 = DensityVector::uniform(4);
        assert_eq!(rho_c(&Params::new(4, 1).unwrap(), &uniform4), rat(0, 1));
    }
}
