//! Signed pile sizes on the edges of a cycle or path.
//!
//! Identifying each edge with its midpoint, the pile value is the opinion
//! difference across the edge under the fixed left-to-right orientation
//! (`xi(e) = opinion(right) - opinion(left)`, wrapping on the cycle). A
//! nonzero pile of absolute size at most `theta` is active and moves when an
//! arrow crosses its edge; a larger pile is a blockade and blocks the arrow.
//! All of the evolution reduces to signed addition of pile values, which
//! performs annihilation by pairs when charges differ and merging when they
//! agree.

use crate::error::{Error, Result};
use crate::model::config::Configuration;
use crate::model::graph::Topology;

/// Classification of one pile value against the threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PileClass {
    Empty,
    Active { charge: i8, size: u32 },
    Blockade { charge: i8, size: u32 },
}

/// Pure classification: empty at zero, active up to `theta` particles,
/// blockade above.
pub fn classify_pile(value: i32, theta: u32) -> PileClass {
    let size = value.unsigned_abs();
    let charge = if value > 0 { 1 } else { -1 };
    if size == 0 {
        PileClass::Empty
    } else if size <= theta {
        PileClass::Active { charge, size }
    } else {
        PileClass::Blockade { charge, size }
    }
}

/// Outcome of one arrow applied to the edge process.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeStep {
    /// Whether the crossed pile moved (it was active and nonempty).
    pub moved: bool,
    /// Number of particles removed (annihilated by pairs, or discharged off
    /// a path boundary). Always even for interior annihilation.
    pub annihilated: u64,
}

/// Aggregate counts over all piles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParticleStats {
    pub total: u64,
    pub active: u64,
    pub frozen: u64,
    pub blockade_count: usize,
    pub occupied: usize,
    /// Particles per edge.
    pub density: f64,
}

/// The signed pile values along a cycle or path, with running totals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeConfiguration {
    topology: Topology,
    n_vertices: usize,
    theta: u32,
    xi: Vec<i32>,
    total: u64,
    occupied: usize,
    blockades: usize,
}

impl EdgeConfiguration {
    /// Project an opinion configuration: `xi(e) = opinion(right) -
    /// opinion(left)` for every edge under the graph's edge ordering.
    /// Rejects topologies other than cycle and path.
    pub fn project(config: &Configuration, theta: u32) -> Result<Self> {
        let graph = config.graph();
        if !graph.is_linear() {
            return Err(Error::NonLinearTopology(graph.topology().to_string()));
        }
        let xi = graph
            .edges()
            .iter()
            .map(|&(a, b)| i32::from(config.opinion(b)) - i32::from(config.opinion(a)))
            .collect();
        Ok(Self::assemble(
            graph.topology(),
            graph.vertex_count(),
            theta,
            xi,
        ))
    }

    /// Build directly from pile values (mostly for tests and replay). On a
    /// cycle the values must telescope to zero.
    pub fn from_piles(topology: Topology, xi: Vec<i32>, theta: u32) -> Result<Self> {
        let n_vertices = match topology {
            Topology::Cycle => {
                if xi.len() < 3 {
                    return Err(Error::InvalidGraph("cycle needs at least 3 edges".into()));
                }
                if xi.iter().map(|&v| i64::from(v)).sum::<i64>() != 0 {
                    return Err(Error::InvalidGraph(
                        "cycle pile values must sum to zero".into(),
                    ));
                }
                xi.len()
            }
            Topology::Path => xi.len() + 1,
            other => return Err(Error::NonLinearTopology(other.to_string())),
        };
        Ok(Self::assemble(topology, n_vertices, theta, xi))
    }

    fn assemble(topology: Topology, n_vertices: usize, theta: u32, xi: Vec<i32>) -> Self {
        let total = xi.iter().map(|&v| u64::from(v.unsigned_abs())).sum();
        let occupied = xi.iter().filter(|&&v| v != 0).count();
        let blockades = xi.iter().filter(|&&v| v.unsigned_abs() > theta).count();
        EdgeConfiguration {
            topology,
            n_vertices,
            theta,
            xi,
            total,
            occupied,
            blockades,
        }
    }

    pub fn theta(&self) -> u32 {
        self.theta
    }

    pub fn xi(&self) -> &[i32] {
        &self.xi
    }

    pub fn edge_count(&self) -> usize {
        self.xi.len()
    }

    pub fn classify(&self, edge: usize) -> PileClass {
        classify_pile(self.xi[edge], self.theta)
    }

    /// Total particle count; never increases under the dynamics.
    pub fn total_particles(&self) -> u64 {
        self.total
    }

    pub fn occupied_edges(&self) -> usize {
        self.occupied
    }

    pub fn blockade_edges(&self) -> usize {
        self.blockades
    }

    /// Index of the edge crossed by an arrow between adjacent vertices.
    fn crossed_edge(&self, source: u32, target: u32) -> usize {
        let n = self.n_vertices;
        let (s, t) = (source as usize, target as usize);
        match self.topology {
            Topology::Cycle => {
                if (s + 1) % n == t {
                    s
                } else {
                    debug_assert_eq!((t + 1) % n, s, "arrow on a non-edge");
                    t
                }
            }
            _ => {
                debug_assert_eq!(s.abs_diff(t), 1, "arrow on a non-edge");
                s.min(t)
            }
        }
    }

    /// The target's other incident edge, if any (absent at path boundaries).
    fn far_edge(&self, target: u32, crossed: usize) -> Option<usize> {
        let n = self.n_vertices;
        let t = target as usize;
        match self.topology {
            Topology::Cycle => Some(if crossed == t { (t + n - 1) % n } else { t }),
            _ => {
                if crossed == t {
                    t.checked_sub(1)
                } else {
                    if t + 1 < n {
                        Some(t)
                    } else {
                        None
                    }
                }
            }
        }
    }

    /// An arrow is active for the opinion process iff the pile on its
    /// crossed edge is empty or active.
    pub fn arrow_is_active(&self, source: u32, target: u32) -> bool {
        self.xi[self.crossed_edge(source, target)].unsigned_abs() <= self.theta
    }

    /// Apply one arrow, never consulting the opinion configuration. If the
    /// crossed pile is empty or a blockade nothing happens; otherwise its
    /// content moves across the target onto the target's far edge by signed
    /// addition (pairs annihilate when charges differ; at a path boundary
    /// the pile discharges out of the system).
    pub fn apply_arrow(&mut self, source: u32, target: u32) -> EdgeStep {
        let crossed = self.crossed_edge(source, target);
        let v = self.xi[crossed];
        let v_abs = v.unsigned_abs();
        if v == 0 || v_abs > self.theta {
            return EdgeStep {
                moved: false,
                annihilated: 0,
            };
        }
        self.xi[crossed] = 0;
        self.occupied -= 1;
        self.total -= u64::from(v_abs);
        match self.far_edge(target, crossed) {
            None => EdgeStep {
                moved: true,
                annihilated: u64::from(v_abs),
            },
            Some(far) => {
                let w = self.xi[far];
                let w_abs = w.unsigned_abs();
                let merged = w + v;
                let merged_abs = merged.unsigned_abs();
                if w != 0 {
                    self.total -= u64::from(w_abs);
                    self.occupied -= 1;
                    if w_abs > self.theta {
                        self.blockades -= 1;
                    }
                }
                if merged != 0 {
                    self.total += u64::from(merged_abs);
                    self.occupied += 1;
                    if merged_abs > self.theta {
                        self.blockades += 1;
                    }
                }
                self.xi[far] = merged;
                let annihilated = u64::from(v_abs) + u64::from(w_abs) - u64::from(merged_abs);
                debug_assert_eq!(annihilated % 2, 0);
                EdgeStep {
                    moved: true,
                    annihilated,
                }
            }
        }
    }

    pub fn stats(&self) -> ParticleStats {
        let mut active = 0u64;
        let mut frozen = 0u64;
        for &v in &self.xi {
            let size = u64::from(v.unsigned_abs());
            if v.unsigned_abs() > self.theta {
                frozen += size;
            } else {
                active += size;
            }
        }
        ParticleStats {
            total: self.total,
            active,
            frozen,
            blockade_count: self.blockades,
            occupied: self.occupied,
            density: self.total as f64 / self.xi.len() as f64,
        }
    }
}
