//! Phase classification over the `(F, theta)` plane.

use crate::analytics::contributions::fixation_predicate_uniform;
use crate::model::params::Params;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseClass {
    /// `F <= 2 theta + 1`: the one-dimensional system fluctuates and
    /// clusters from any fully supported product measure.
    Fluctuation,
    /// The grand inequality margin is positive: fixation is proved for the
    /// uniform initial distribution.
    FixationProved,
    /// Neither criterion applies; deliberately not extrapolated.
    Unresolved,
}

impl std::fmt::Display for PhaseClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PhaseClass::Fluctuation => "fluctuation",
            PhaseClass::FixationProved => "fixation-proved",
            PhaseClass::Unresolved => "unresolved",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct PhaseCell {
    pub f: u32,
    pub theta: u32,
    pub class: PhaseClass,
    /// Exact grand-inequality margin (informational for fluctuation cells).
    pub margin: Rational,
}

/// Classify every pair `2 <= F <= f_max`, `1 <= theta < F`.
pub fn phase_diagram(f_max: u32) -> Vec<PhaseCell> {
    assert!(f_max >= 2);
    let mut cells = Vec::new();
    for f in 2..=f_max {
        for theta in 1..f {
            let params = Params::new(f, theta).expect("in-range parameters");
            let (fixation, margin) = fixation_predicate_uniform(&params);
            let class = if params.in_fluctuation_regime() {
                PhaseClass::Fluctuation
            } else if fixation {
                PhaseClass::FixationProved
            } else {
                PhaseClass::Unresolved
            };
            cells.push(PhaseCell {
                f,
                theta,
                class,
                margin,
            });
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn cell(cells: &[PhaseCell], f: u32, theta: u32) -> &PhaseCell {
        cells
            .iter()
            .find(|c| c.f == f && c.theta == theta)
            .unwrap()
    }

    #[test]
    fn reference_cells() {
        let cells = phase_diagram(12);
        assert_eq!(cell(&cells, 3, 1).class, PhaseClass::Fluctuation);
        assert_eq!(cell(&cells, 10, 2).class, PhaseClass::FixationProved);
        assert_eq!(cell(&cells, 10, 2).margin, int(9048));
        assert_eq!(cell(&cells, 4, 1).class, PhaseClass::Unresolved);
        assert_eq!(cell(&cells, 4, 1).margin, int(-264));
        assert_eq!(cell(&cells, 2, 1).class, PhaseClass::Fluctuation);
    }

    #[test]
    fn classes_partition_consistently() {
        for c in phase_diagram(20) {
            let p = Params::new(c.f, c.theta).unwrap();
            match c.class {
                PhaseClass::Fluctuation => assert!(p.in_fluctuation_regime()),
                PhaseClass::FixationProved => {
                    assert!(!p.in_fluctuation_regime());
                    assert!(c.margin > int(0));
                }
                PhaseClass::Unresolved => {
                    assert!(!p.in_fluctuation_regime());
                    assert!(c.margin <= int(0));
                }
            }
        }
    }

    #[test]
    fn grid_size() {
        // sum over F of (F - 1)
        assert_eq!(phase_diagram(5).len(), 1 + 2 + 3 + 4);
    }
}
