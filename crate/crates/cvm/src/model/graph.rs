use crate::error::{Error, Result};
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    Cycle,
    Path,
    Complete,
    Custom,
}

impl std::fmt::Display for Topology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Topology::Cycle => "cycle",
            Topology::Path => "path",
            Topology::Complete => "complete",
            Topology::Custom => "custom",
        };
        f.write_str(s)
    }
}

/// Finite connected simple graph. Vertices are `0..n`.
///
/// For `Cycle`, edge `i` connects `i` and `(i+1) % n`; for `Path`, edge `i`
/// connects `i` and `i + 1`. The edge index is the carrier of the
/// charged-particle process on these topologies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: u32,
    topology: Topology,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn cycle(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::build(n, Topology::Cycle, edges)
    }

    pub fn path(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph(format!(
                "path needs at least 2 vertices, got {n}"
            )));
        }
        let edges = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::build(n, Topology::Path, edges)
    }

    pub fn complete(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph(format!(
                "complete graph needs at least 2 vertices, got {n}"
            )));
        }
        let mut edges = Vec::with_capacity((n as usize * (n as usize - 1)) / 2);
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Graph::build(n, Topology::Complete, edges)
    }

    /// Custom edge list; rejects self-loops, duplicates, out-of-range
    /// endpoints, and disconnected graphs.
    pub fn from_edges(n: u32, edges: Vec<(u32, u32)>) -> Result<Self> {
        Graph::build(n, Topology::Custom, edges)
    }

    fn build(n: u32, topology: Topology, edges: Vec<(u32, u32)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph(format!(
                "need at least 2 vertices, got {n}"
            )));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n as usize];
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        let g = Graph {
            n,
            topology,
            edges,
            adj,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    fn is_connected(&self) -> bool {
        let n = self.n as usize;
        let mut visited = vec![false; n];
        let mut stack = vec![0u32];
        visited[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v as usize] {
                if !visited[w as usize] {
                    visited[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    /// Cycle or path: the topologies carrying the edge process.
    pub fn is_linear(&self) -> bool {
        matches!(self.topology, Topology::Cycle | Topology::Path)
    }

    pub fn are_adjacent(&self, x: u32, y: u32) -> bool {
        self.adj[x as usize].contains(&y)
    }

    /// Number of directed arrows (each undirected edge in both directions).
    pub fn arrow_count(&self) -> usize {
        2 * self.edges.len()
    }

    /// Directed arrow `index` in `0..arrow_count()` as `(source, target)`.
    #[inline]
    pub fn arrow(&self, index: usize) -> (u32, u32) {
        let (a, b) = self.edges[index >> 1];
        if index & 1 == 0 {
            (a, b)
        } else {
            (b, a)
        }
    }
}
