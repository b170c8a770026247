//! Undirected, positively weighted graphs and the shortest-path machinery
//! every construction is built on.

mod dijkstra;
pub mod generate;
pub mod io;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dijkstra::{
    dijkstra, dijkstra_within, multi_source_dijkstra, shortest_path, DistanceTable,
};

/// An undirected weighted edge, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, w: f64) -> Self {
        if u <= v {
            Edge { u, v, w }
        } else {
            Edge { u: v, v: u, w }
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Incident edge as seen from one endpoint.
#[derive(Debug, Clone, Copy)]
pub struct Adjacent {
    pub to: usize,
    pub w: f64,
    pub edge: usize,
}

/// Undirected graph on vertices `0..n` with strictly positive edge weights,
/// no self-loops and at most one edge per unordered pair.
///
/// Connectivity is not part of the type: subgraphs such as a partially built
/// spanner are represented with the same type. Constructions that need a
/// connected input check it explicitly.
#[derive(Debug, Clone)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<Adjacent>>,
    index: HashMap<(usize, usize), usize>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return false;
        }
        self.edges
            .iter()
            .all(|e| other.edge_weight(e.u, e.v) == Some(e.w))
    }
}

impl Graph {
    /// Builds a graph, enforcing the weight, self-loop and duplicate rules.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        Self::build(n, edges, false)
    }

    /// Like [`Graph::new`] but admits zero-weight edges. Only used for the
    /// virtual-root augmentation inside SLT forests.
    pub(crate) fn new_allow_zero(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self> {
        Self::build(n, edges, true)
    }

    fn build(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
        allow_zero: bool,
    ) -> Result<Self> {
        let mut g = Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            index: HashMap::new(),
        };
        for (u, v, w) in edges {
            g.push_edge(u, v, w, allow_zero)?;
        }
        Ok(g)
    }

    fn push_edge(&mut self, u: usize, v: usize, w: f64, allow_zero: bool) -> Result<()> {
        let bad = |reason: &str| Error::InvalidEdge {
            u,
            v,
            reason: reason.to_string(),
        };
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidVertex {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(bad("self-loop"));
        }
        if !w.is_finite() {
            return Err(bad("weight is not finite"));
        }
        if w < 0.0 || (w == 0.0 && !allow_zero) {
            return Err(bad("weight must be positive"));
        }
        let e = Edge::new(u, v, w);
        if self.index.contains_key(&(e.u, e.v)) {
            return Err(bad("duplicate edge"));
        }
        let id = self.edges.len();
        self.index.insert((e.u, e.v), id);
        self.adjacency[e.u].push(Adjacent { to: e.v, w, edge: id });
        self.adjacency[e.v].push(Adjacent { to: e.u, w, edge: id });
        self.edges.push(e);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn neighbors(&self, v: usize) -> &[Adjacent] {
        &self.adjacency[v]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        self.edge_id(u, v).map(|id| self.edges[id].w)
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn max_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).fold(0.0, f64::max)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n })
        }
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for a in &self.adjacency[x] {
                if !seen[a.to] {
                    seen[a.to] = true;
                    count += 1;
                    stack.push(a.to);
                }
            }
        }
        count == self.n
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Subgraph on the same vertex set keeping the given edge ids.
    pub fn subgraph(&self, edge_ids: impl IntoIterator<Item = usize>) -> Graph {
        let mut ids: Vec<usize> = edge_ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        let edges = ids.into_iter().map(|id| {
            let e = self.edges[id];
            (e.u, e.v, e.w)
        });
        // Edges come from a valid graph, so revalidation cannot fail.
        Graph::new_allow_zero(self.n, edges).expect("subgraph of a valid graph")
    }

    /// Same topology with every weight multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Graph {
        let edges = self.edges.iter().map(|e| (e.u, e.v, e.w * factor));
        Graph::new_allow_zero(self.n, edges).expect("scaling preserves validity")
    }
}

/// A walk through the host graph given by its vertex sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub length: f64,
    /// Heaviest edge on the path, 0 for a single vertex.
    pub bottleneck: f64,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            vertices: vec![v],
            length: 0.0,
            bottleneck: 0.0,
        }
    }

    /// Edge ids of consecutive vertex pairs; `None` if some pair is not an edge.
    pub fn edge_ids(&self, g: &Graph) -> Option<Vec<usize>> {
        self.vertices
            .windows(2)
            .map(|p| g.edge_id(p[0], p[1]))
            .collect()
    }
}
