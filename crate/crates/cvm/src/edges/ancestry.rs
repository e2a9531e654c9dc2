//! Forward ancestry tracking: each vertex carries the label of the initial
//! vertex whose opinion it currently holds. An active arrow transports the
//! source's label onto the target (also between equal opinions, matching the
//! active-path definition), so the label of `x` at time `t` is the unique
//! ancestor of `x`.

use crate::model::engine::ArrowEvent;
use crate::model::graph::Topology;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AncestryState {
    origin: Vec<u32>,
}

impl AncestryState {
    /// At time zero every vertex is its own ancestor.
    pub fn identity(n: usize) -> Self {
        AncestryState {
            origin: (0..n as u32).collect(),
        }
    }

    pub fn origin(&self, v: u32) -> u32 {
        self.origin[v as usize]
    }

    pub fn origins(&self) -> &[u32] {
        &self.origin
    }

    /// Apply one recorded event: active arrows transport the origin label.
    pub fn update(&mut self, event: &ArrowEvent) {
        if event.active {
            self.origin[event.target as usize] = self.origin[event.source as usize];
        }
    }

    /// Vertices currently descending from initial vertex `z`, in vertex
    /// order.
    pub fn descendants(&self, z: u32) -> Vec<u32> {
        (0..self.origin.len() as u32)
            .filter(|&x| self.origin[x as usize] == z)
            .collect()
    }

    /// On a path every nonempty descendant set must be an interval; on a
    /// cycle, a cyclic interval (equivalently, walking around the cycle
    /// crosses the set's boundary zero or two times).
    pub fn descendant_sets_are_intervals(&self, topology: Topology) -> bool {
        let n = self.origin.len();
        let labels: std::collections::HashSet<u32> = self.origin.iter().copied().collect();
        for z in labels {
            let member: Vec<bool> = self.origin.iter().map(|&o| o == z).collect();
            let ok = match topology {
                Topology::Path => {
                    let first = member.iter().position(|&m| m);
                    let last = member.iter().rposition(|&m| m);
                    match (first, last) {
                        (Some(a), Some(b)) => member[a..=b].iter().all(|&m| m),
                        _ => true,
                    }
                }
                Topology::Cycle => {
                    let transitions = (0..n)
                        .filter(|&i| member[i] != member[(i + 1) % n])
                        .count();
                    transitions == 0 || transitions == 2
                }
                _ => return false,
            };
            if !ok {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn active_arrow(source: u32, target: u32) -> ArrowEvent {
        ArrowEvent {
            time: 1.0,
            source,
            target,
            active: true,
        }
    }

    #[test]
    fn starts_as_identity() {
        let a = AncestryState::identity(4);
        assert_eq!(a.origins(), &[0, 1, 2, 3]);
    }

    #[test]
    fn active_arrow_transports_origin() {
        let mut a = AncestryState::identity(4);
        a.update(&active_arrow(1, 2));
        assert_eq!(a.origins(), &[0, 1, 1, 3]);
        // inactive arrows change nothing
        a.update(&ArrowEvent {
            time: 2.0,
            source: 3,
            target: 2,
            active: false,
        });
        assert_eq!(a.origins(), &[0, 1, 1, 3]);
        assert_eq!(a.descendants(1), vec![1, 2]);
    }

    #[test]
    fn interval_checks() {
        let mut a = AncestryState::identity(5);
        a.update(&active_arrow(1, 2));
        assert!(a.descendant_sets_are_intervals(Topology::Path));
        // force a non-interval set {0, 2} by hand
        let broken = AncestryState {
            origin: vec![7, 1, 7, 3, 4],
        };
        assert!(!broken.descendant_sets_are_intervals(Topology::Path));
        // cyclic interval wrapping the seam is fine on the cycle
        let wrapped = AncestryState {
            origin: vec![9, 1, 2, 9, 9],
        };
        assert!(wrapped.descendant_sets_are_intervals(Topology::Cycle));
        assert!(!AncestryState {
            origin: vec![9, 1, 9, 3, 9],
        }
        .descendant_sets_are_intervals(Topology::Cycle));
    }
}
