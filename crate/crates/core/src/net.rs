//! Greedy Δ-nets, the nested net hierarchy, the sparse path set `H_0` that
//! links every vertex to nearby net points, and the representative table.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{dijkstra_within, multi_source_dijkstra, Graph};
use crate::tree::mst_weight;

/// Largest eps for which the representative bound is guaranteed.
pub const MAX_SAFE_EPS: f64 = 0.1;

pub(crate) fn check_eps(eps: f64, allow_unsafe: bool) -> Result<()> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
    }
    if eps >= MAX_SAFE_EPS && !allow_unsafe {
        return Err(Error::Parameter(format!(
            "eps must lie in (0, {MAX_SAFE_EPS}), got {eps}; pass the unsafe override to proceed without guarantees"
        )));
    }
    Ok(())
}

/// A set of vertices pairwise more than `delta` apart that covers every
/// vertex within `delta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaNet {
    pub delta: f64,
    /// Ascending vertex ids.
    pub members: Vec<usize>,
}

impl DeltaNet {
    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(PartialEq)]
struct Key(f64, usize);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

/// Lowers `dist` (distance to the current net) after adding `center`.
fn absorb_center(g: &Graph, dist: &mut [f64], center: usize) {
    dist[center] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse(Key(0.0, center)));
    while let Some(Reverse(Key(d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for a in g.neighbors(u) {
            let nd = d + a.w;
            if nd < dist[a.to] {
                dist[a.to] = nd;
                heap.push(Reverse(Key(nd, a.to)));
            }
        }
    }
}

/// Extends `seed_set` greedily to a `delta`-net, scanning candidates in
/// ascending id order.
pub fn greedy_delta_net(g: &Graph, delta: f64, seed_set: &[usize]) -> Result<DeltaNet> {
    if !(delta > 0.0) {
        return Err(Error::Parameter(format!("delta must be positive, got {delta}")));
    }
    let mut members = seed_set.to_vec();
    members.sort_unstable();
    members.dedup();
    for &s in &members {
        g.check_vertex(s)?;
        let ball = dijkstra_within(g, s, delta.next_up())?;
        if let Some(&t) = members.iter().find(|&&t| t != s && ball.reached(t)) {
            return Err(Error::Precondition(format!(
                "seed vertices {s} and {t} are within distance {delta}"
            )));
        }
    }

    let mut dist = if members.is_empty() {
        vec![f64::INFINITY; g.n()]
    } else {
        multi_source_dijkstra(g, &members)?.dist
    };
    for v in 0..g.n() {
        if dist[v] > delta {
            members.push(v);
            absorb_center(g, &mut dist, v);
        }
    }
    members.sort_unstable();
    Ok(DeltaNet { delta, members })
}

/// Nested nets `V = N_{-1} ⊇ N_0 ⊇ ... ⊇ N_top`, where `N_i` is a `2^i`-net
/// and `N_top` is a single vertex, plus `H_0` and the representatives.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetHierarchy {
    pub eps: f64,
    /// Levels climbed per `H_0` path chain: `ceil(log2(1/eps))`.
    pub climb: usize,
    pub top: usize,
    /// MST weight of the graph the hierarchy was built on.
    pub mst_weight: f64,
    /// `levels[i]` is the `2^i`-net for `i` in `0..=top`.
    pub levels: Vec<DeltaNet>,
    /// Highest level containing each vertex, `-1` when outside `N_0`.
    pub level_of: Vec<i32>,
    /// `rep[i][v]`: the level-`i` representative of `v`.
    pub rep: Vec<Vec<usize>>,
    /// Host edge ids of `H_0`, ascending.
    pub h0_edges: Vec<usize>,
    pub h0_weight: f64,
    /// Total length of the paths added by the vertices of `N_i \ N_{i+1}`,
    /// indexed by `i + 1`.
    pub h0_level_path_weight: Vec<f64>,
}

pub fn scale_of(level: i32) -> f64 {
    2f64.powi(level)
}

fn climb_for(eps: f64) -> usize {
    let mut t = 1;
    while scale_of(-(t as i32)) > eps {
        t += 1;
    }
    t
}

impl NetHierarchy {
    pub fn net(&self, level: usize) -> &DeltaNet {
        &self.levels[level]
    }

    /// `r_i(v)`; the vertex itself below level 0.
    pub fn representative(&self, v: usize, level: i32) -> usize {
        if level < 0 {
            v
        } else {
            self.rep[level as usize][v]
        }
    }

    pub fn h0_weight(&self) -> f64 {
        self.h0_weight
    }

    pub fn h0_graph(&self, g: &Graph) -> Graph {
        g.subgraph(self.h0_edges.iter().copied())
    }
}

/// Builds the hierarchy top-down; `g` is expected to be normalized so that
/// its MST weighs `n`, though any connected graph works.
pub fn build_net_hierarchy(g: &Graph, eps: f64, allow_unsafe_eps: bool) -> Result<NetHierarchy> {
    check_eps(eps, allow_unsafe_eps)?;
    g.require_connected()?;
    let n = g.n();
    let mst_w = mst_weight(g)?;
    let climb = climb_for(eps);

    // The top net is {0}; its scale must dominate the eccentricity of 0,
    // which the MST weight bounds up to rounding.
    let ecc0 = crate::graph::dijkstra(g, 0)?
        .dist
        .into_iter()
        .fold(0.0, f64::max);
    let reach = mst_w.max(ecc0);
    let mut top = 0usize;
    while scale_of(top as i32) < reach {
        top += 1;
    }

    let mut levels = vec![
        DeltaNet {
            delta: 0.0,
            members: Vec::new()
        };
        top + 1
    ];
    levels[top] = greedy_delta_net(g, scale_of(top as i32), &[0])?;
    debug_assert_eq!(levels[top].members, vec![0]);
    for i in (0..top).rev() {
        levels[i] = greedy_delta_net(g, scale_of(i as i32), &levels[i + 1].members.clone())?;
    }

    let mut level_of = vec![-1i32; n];
    for (i, net) in levels.iter().enumerate() {
        for &v in &net.members {
            level_of[v] = i as i32;
        }
    }

    let tables = levels
        .iter()
        .map(|net| multi_source_dijkstra(g, &net.members))
        .collect::<Result<Vec<_>>>()?;

    let mut in_h0 = vec![false; g.m()];
    let mut h0_level_path_weight = vec![0.0; top + 2];
    for v in 0..n {
        let own = level_of[v];
        for j in (own + 1)..=(own + climb as i32) {
            if j > top as i32 {
                break;
            }
            let table = &tables[j as usize];
            h0_level_path_weight[(own + 1) as usize] += table.dist[v];
            let mut x = v;
            while let Some(p) = table.parent[x] {
                in_h0[g.edge_id(x, p).expect("tree edge in host")] = true;
                x = p;
            }
        }
    }
    let h0_edges: Vec<usize> = (0..g.m()).filter(|&id| in_h0[id]).collect();
    let h0_weight = h0_edges.iter().map(|&id| g.edge(id).w).sum();

    let nearest = |level: usize, v: usize| tables[level].root[v].expect("nets cover the graph");
    let mut rep = vec![vec![0usize; n]; top + 1];
    for (i, row) in rep.iter_mut().enumerate() {
        let base = i % climb;
        let steps = i / climb;
        for (v, slot) in row.iter_mut().enumerate() {
            let mut x = v;
            for s in 0..=steps {
                let target = base + s * climb;
                if level_of[x] < target as i32 {
                    debug_assert!(target as i32 - level_of[x] <= climb as i32);
                    x = nearest(target, x);
                }
            }
            *slot = x;
        }
    }

    Ok(NetHierarchy {
        eps,
        climb,
        top,
        mst_weight: mst_w,
        levels,
        level_of,
        rep,
        h0_edges,
        h0_weight,
        h0_level_path_weight,
    })
}
