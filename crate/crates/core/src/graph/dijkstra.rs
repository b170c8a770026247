use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{Graph, Path};
use crate::error::{Error, Result};

/// Result of a (multi-source) Dijkstra run.
///
/// Labels are compared lexicographically as `(dist, root, bottleneck)`; equal
/// labels keep the smallest predecessor id. For a single source this makes
/// `bottleneck[v]` the minimum, over all shortest source–v paths, of the
/// heaviest edge, and the parent pointers realise that minimum.
#[derive(Debug, Clone)]
pub struct DistanceTable {
    pub sources: Vec<usize>,
    /// `f64::INFINITY` for vertices not reached.
    pub dist: Vec<f64>,
    pub parent: Vec<Option<usize>>,
    pub bottleneck: Vec<f64>,
    /// Source whose shortest-path tree contains the vertex.
    pub root: Vec<Option<usize>>,
}

impl DistanceTable {
    pub fn reached(&self, v: usize) -> bool {
        self.dist[v].is_finite()
    }

    /// Vertices on the tree path from `root[v]` to `v`, root first.
    pub fn tree_path_vertices(&self, v: usize) -> Option<Vec<usize>> {
        if !self.reached(v) {
            return None;
        }
        let mut out = vec![v];
        let mut x = v;
        while let Some(p) = self.parent[x] {
            out.push(p);
            x = p;
        }
        out.reverse();
        Some(out)
    }

    /// Tree path from `root[v]` to `v` with its length and bottleneck.
    pub fn path_to(&self, g: &Graph, v: usize) -> Option<Path> {
        let vertices = self.tree_path_vertices(v)?;
        let mut length = 0.0;
        let mut bottleneck: f64 = 0.0;
        for pair in vertices.windows(2) {
            let w = g.edge_weight(pair[0], pair[1])?;
            length += w;
            bottleneck = bottleneck.max(w);
        }
        Some(Path {
            vertices,
            length,
            bottleneck,
        })
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Label {
    dist: f64,
    root: usize,
    bottleneck: f64,
}

impl Label {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dist
            .total_cmp(&other.dist)
            .then(self.root.cmp(&other.root))
            .then(self.bottleneck.total_cmp(&other.bottleneck))
    }
}

#[derive(Clone, Copy, PartialEq)]
struct State {
    label: Label,
    vertex: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed for a min-heap.
        other
            .label
            .cmp(&self.label)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn run(g: &Graph, sources: &[usize], radius: f64) -> DistanceTable {
    let n = g.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut bottleneck = vec![f64::INFINITY; n];
    let mut root: Vec<Option<usize>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();

    let mut srcs = sources.to_vec();
    srcs.sort_unstable();
    srcs.dedup();
    for &s in &srcs {
        if radius > 0.0 {
            dist[s] = 0.0;
            bottleneck[s] = 0.0;
            root[s] = Some(s);
            heap.push(State {
                label: Label {
                    dist: 0.0,
                    root: s,
                    bottleneck: 0.0,
                },
                vertex: s,
            });
        }
    }

    while let Some(State { label, vertex: u }) = heap.pop() {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        for a in g.neighbors(u) {
            let x = a.to;
            if settled[x] {
                continue;
            }
            let cand = Label {
                dist: label.dist + a.w,
                root: label.root,
                bottleneck: label.bottleneck.max(a.w),
            };
            if cand.dist >= radius {
                continue;
            }
            let cur = Label {
                dist: dist[x],
                root: root[x].unwrap_or(usize::MAX),
                bottleneck: bottleneck[x],
            };
            match cand.cmp(&cur) {
                Ordering::Less => {
                    dist[x] = cand.dist;
                    root[x] = Some(cand.root);
                    bottleneck[x] = cand.bottleneck;
                    parent[x] = Some(u);
                    heap.push(State {
                        label: cand,
                        vertex: x,
                    });
                }
                Ordering::Equal => {
                    if parent[x].map_or(true, |p| u < p) {
                        parent[x] = Some(u);
                    }
                }
                Ordering::Greater => {}
            }
        }
    }

    DistanceTable {
        sources: srcs,
        dist,
        parent,
        bottleneck,
        root,
    }
}

/// Single-source shortest paths with min-bottleneck tracking.
pub fn dijkstra(g: &Graph, source: usize) -> Result<DistanceTable> {
    g.check_vertex(source)?;
    Ok(run(g, &[source], f64::INFINITY))
}

/// Dijkstra from `source` that only labels vertices at distance strictly
/// below `radius`; everything else stays unreached.
pub fn dijkstra_within(g: &Graph, source: usize, radius: f64) -> Result<DistanceTable> {
    g.check_vertex(source)?;
    Ok(run(g, &[source], radius))
}

/// Distances to the nearest member of `sources`. Ties between sources go to
/// the smallest source id, then to the smallest predecessor id.
pub fn multi_source_dijkstra(g: &Graph, sources: &[usize]) -> Result<DistanceTable> {
    if sources.is_empty() {
        return Err(Error::Parameter("empty source set".into()));
    }
    for &s in sources {
        g.check_vertex(s)?;
    }
    Ok(run(g, sources, f64::INFINITY))
}

/// Deterministic shortest `u`–`v` path; among shortest paths it has the
/// smallest bottleneck.
pub fn shortest_path(g: &Graph, u: usize, v: usize) -> Result<Path> {
    g.check_vertex(v)?;
    if u == v {
        g.check_vertex(u)?;
        return Ok(Path::trivial(u));
    }
    let table = dijkstra(g, u)?;
    table.path_to(g, v).ok_or(Error::Disconnected)
}
