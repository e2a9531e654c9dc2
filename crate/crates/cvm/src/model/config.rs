use crate::error::{Error, Result};
use crate::model::density::DensityVector;
use crate::model::graph::Graph;
use rand::Rng;
use std::sync::Arc;

/// Assignment of an opinion in `{1, ..., F}` to every vertex of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    graph: Arc<Graph>,
    opinions: Vec<u8>,
}

impl Configuration {
    pub fn new(graph: Arc<Graph>, opinions: Vec<u8>, f: u32) -> Result<Self> {
        if opinions.len() != graph.vertex_count() {
            return Err(Error::InvalidParams(format!(
                "{} opinions for {} vertices",
                opinions.len(),
                graph.vertex_count()
            )));
        }
        if f > u32::from(u8::MAX) {
            return Err(Error::InvalidParams("F too large for configuration".into()));
        }
        if let Some(&bad) = opinions
            .iter()
            .find(|&&o| o == 0 || u32::from(o) > f)
        {
            return Err(Error::InvalidParams(format!(
                "opinion {bad} outside 1..={f}"
            )));
        }
        Ok(Configuration { graph, opinions })
    }

    /// Product-measure initial state: each vertex independently receives
    /// opinion `j` with probability `rho_j`. Deterministic given the RNG
    /// stream state.
    pub fn sample<R: Rng>(graph: Arc<Graph>, density: &DensityVector, rng: &mut R) -> Self {
        let cumulative = density.cumulative_f64();
        let opinions = (0..graph.vertex_count())
            .map(|_| {
                let u: f64 = rng.random();
                let mut opinion = cumulative.len() as u8;
                for (k, c) in cumulative.iter().enumerate() {
                    if u < *c {
                        opinion = (k + 1) as u8;
                        break;
                    }
                }
                opinion
            })
            .collect();
        Configuration { graph, opinions }
    }

    /// Monochromatic configuration.
    pub fn constant(graph: Arc<Graph>, opinion: u8) -> Self {
        assert!(opinion >= 1);
        let n = graph.vertex_count();
        Configuration {
            graph,
            opinions: vec![opinion; n],
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    #[inline]
    pub fn opinion(&self, v: u32) -> u8 {
        self.opinions[v as usize]
    }

    pub fn opinions(&self) -> &[u8] {
        &self.opinions
    }

    #[inline]
    pub fn gap(&self, x: u32, y: u32) -> u32 {
        u32::from(self.opinions[x as usize].abs_diff(self.opinions[y as usize]))
    }

    /// An arrow `x -> y` at this instant is active iff the opinion distance
    /// of its endpoints is at most `theta`. Symmetric in `x` and `y`.
    #[inline]
    pub fn arrow_is_active(&self, x: u32, y: u32, theta: u32) -> bool {
        debug_assert!(self.graph.are_adjacent(x, y), "arrow on a non-edge");
        self.gap(x, y) <= theta
    }

    /// Apply the arrow `source -> target`: if active, the target adopts the
    /// source's opinion; otherwise nothing happens. Only the target vertex
    /// can change. Returns whether the target's opinion changed.
    #[inline]
    pub fn apply_arrow(&mut self, source: u32, target: u32, theta: u32) -> bool {
        let s = self.opinions[source as usize];
        let t = self.opinions[target as usize];
        if s != t && u32::from(s.abs_diff(t)) <= theta {
            self.opinions[target as usize] = s;
            true
        } else {
            false
        }
    }

    pub fn is_consensus(&self) -> bool {
        self.opinions.iter().all(|&o| o == self.opinions[0])
    }

    /// Absorbing iff every edge is either concordant or blocked (gap larger
    /// than the threshold): no arrow can ever change an opinion again.
    pub fn is_absorbing(&self, theta: u32) -> bool {
        self.active_discordant_edges(theta) == 0
    }

    /// Number of edges with `0 < gap <= theta`; zero exactly on absorbing
    /// states.
    pub fn active_discordant_edges(&self, theta: u32) -> usize {
        self.graph
            .edges()
            .iter()
            .filter(|&&(a, b)| {
                let g = self.gap(a, b);
                g > 0 && g <= theta
            })
            .count()
    }
}
