//! Spanner constructions.
//!
//! [`build_spanner`] assembles the light near-additive spanner from three
//! parts on the normalized graph:
//!
//! 1. `H_0`: short paths from every vertex to nearby points of the net
//!    hierarchy, which make every vertex reachable from its representative
//!    at each scale.
//! 2. For every `u` and every `v` in the `(1-eps)/2`-bunch of `u`, a shortest
//!    path from `u` to the representative of `v` at scale about `eps d(u,v)`.
//! 3. For every sampled level `A_i`, `i >= 1`, an SLT forest rooted at `A_i`.
//!
//! [`build_wmax_spanner`] is the simpler construction that takes one SLT per
//! point of a `sqrt(n)`-net, for graphs whose heaviest edge is at least
//! `sqrt(w(MST))`.

mod sampling;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use sampling::{
    bunch_of, draw_levels, promotion_probability, sample_levels, Bunch, LevelSampling,
    MAX_SAMPLING_RETRIES,
};

use crate::error::{Error, Result};
use crate::graph::{dijkstra, Graph};
use crate::net::{build_net_hierarchy, check_eps, greedy_delta_net, scale_of, DeltaNet, NetHierarchy};
use crate::tree::{mst_weight, slt, slt_forest};

/// Version of the spanner JSON layout.
pub const SPANNER_SCHEMA_VERSION: u32 = 1;

/// Construction phase that contributed an edge. An edge added by several
/// phases carries the earliest one in declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PhaseTag {
    #[serde(rename = "H0")]
    H0,
    #[serde(rename = "P2_REP")]
    P2Rep,
    #[serde(rename = "P2_DIRECT")]
    P2Direct,
    #[serde(rename = "P2_TOP")]
    P2Top,
    #[serde(rename = "SLT")]
    Slt,
}

impl PhaseTag {
    pub const ALL: [PhaseTag; 5] = [
        PhaseTag::H0,
        PhaseTag::P2Rep,
        PhaseTag::P2Direct,
        PhaseTag::P2Top,
        PhaseTag::Slt,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PhaseTag::H0 => "H0",
            PhaseTag::P2Rep => "P2_REP",
            PhaseTag::P2Direct => "P2_DIRECT",
            PhaseTag::P2Top => "P2_TOP",
            PhaseTag::Slt => "SLT",
        }
    }
}

impl std::fmt::Display for PhaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpannerKind {
    /// `(1+eps, O(k/eps)^k W(x,y))` construction.
    NearAdditive,
    /// `(1+eps, 2(1+eps) W_max)` construction.
    MaxWeight,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpannerParams {
    pub eps: f64,
    pub k: usize,
    pub seed: u64,
    #[serde(default)]
    pub unsafe_eps: bool,
}

impl SpannerParams {
    pub fn new(eps: f64, k: usize, seed: u64) -> Self {
        SpannerParams {
            eps,
            k,
            seed,
            unsafe_eps: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpannerEdge {
    /// Edge id in the host graph.
    pub id: usize,
    pub u: usize,
    pub v: usize,
    /// Host weight (not normalized).
    pub w: f64,
    pub phase: PhaseTag,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseSummary {
    pub edges: usize,
    pub weight: f64,
}

/// Edge subset of a host graph, each edge tagged with its phase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spanner {
    pub schema_version: u32,
    pub kind: SpannerKind,
    pub n: usize,
    pub params: SpannerParams,
    /// Seed actually used by level sampling, if any.
    pub effective_seed: Option<u64>,
    /// Factor the host weights were multiplied by during construction.
    pub scale: f64,
    /// Sorted by host edge id.
    pub edges: Vec<SpannerEdge>,
    pub summary: BTreeMap<PhaseTag, PhaseSummary>,
}

impl Spanner {
    /// Assembles a spanner from per-edge tags over host edge ids.
    pub fn from_tags(
        host: &Graph,
        kind: SpannerKind,
        params: SpannerParams,
        effective_seed: Option<u64>,
        scale: f64,
        tags: impl IntoIterator<Item = (usize, PhaseTag)>,
    ) -> Self {
        let mut best: BTreeMap<usize, PhaseTag> = BTreeMap::new();
        for (id, tag) in tags {
            best.entry(id)
                .and_modify(|t| *t = (*t).min(tag))
                .or_insert(tag);
        }
        let edges: Vec<SpannerEdge> = best
            .into_iter()
            .map(|(id, phase)| {
                let e = host.edge(id);
                SpannerEdge {
                    id,
                    u: e.u,
                    v: e.v,
                    w: e.w,
                    phase,
                }
            })
            .collect();
        let mut summary: BTreeMap<PhaseTag, PhaseSummary> = BTreeMap::new();
        for e in &edges {
            let s = summary.entry(e.phase).or_default();
            s.edges += 1;
            s.weight += e.w;
        }
        Spanner {
            schema_version: SPANNER_SCHEMA_VERSION,
            kind,
            n: host.n(),
            params,
            effective_seed,
            scale,
            edges,
            summary,
        }
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    /// Errors unless every edge exists in `host` with the recorded weight.
    pub fn check_host(&self, host: &Graph) -> Result<()> {
        if host.n() != self.n {
            return Err(Error::Structure(format!(
                "spanner has {} vertices, graph has {}",
                self.n,
                host.n()
            )));
        }
        for e in &self.edges {
            let ok = e.id < host.m() && {
                let h = host.edge(e.id);
                h.u == e.u && h.v == e.v && h.w == e.w
            };
            if !ok {
                return Err(Error::Structure(format!(
                    "spanner edge ({}, {}, {}) with id {} is not a host edge",
                    e.u, e.v, e.w, e.id
                )));
            }
        }
        Ok(())
    }

    /// The spanner as a graph on the host vertex set.
    pub fn to_graph(&self, host: &Graph) -> Result<Graph> {
        self.check_host(host)?;
        Ok(host.subgraph(self.edge_ids()))
    }

    /// Copy without the listed host edge ids.
    pub fn without_edges(&self, host: &Graph, drop: &[usize]) -> Spanner {
        Spanner::from_tags(
            host,
            self.kind,
            self.params,
            self.effective_seed,
            self.scale,
            self.edges
                .iter()
                .filter(|e| !drop.contains(&e.id))
                .map(|e| (e.id, e.phase)),
        )
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Spanner> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Scales weights so the MST weighs exactly `n` (up to rounding).
pub fn normalize(g: &Graph) -> Result<(Graph, f64)> {
    g.require_connected()?;
    let w = mst_weight(g)?;
    let scale = if w > 0.0 { g.n() as f64 / w } else { 1.0 };
    if scale == 1.0 {
        return Ok((g.clone(), 1.0));
    }
    Ok((g.scaled(scale), scale))
}

/// The unique integer `j` with `eps d / 8 <= 2^j < eps d / 4`.
pub fn representative_level(eps: f64, d: f64) -> i32 {
    let lo = eps * d / 8.0;
    let mut j = lo.log2().ceil() as i32;
    while scale_of(j) < lo {
        j += 1;
    }
    while scale_of(j - 1) >= lo {
        j -= 1;
    }
    j
}

/// One phase-2 connection: `u` linked to `target = r(u, v)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Phase2Record {
    pub center: usize,
    pub center_level: usize,
    pub member: usize,
    /// Representative level; negative means `target == member`.
    pub j: i32,
    pub target: usize,
    pub d_center_member: f64,
    pub d_center_target: f64,
    pub tag: PhaseTag,
    /// Vertices of the added shortest path, `center` first.
    pub path: Vec<usize>,
}

/// Construction state kept for lemma-level verification. All distances are
/// in normalized units.
#[derive(Debug, Clone)]
pub struct BuildInternals {
    pub normalized: Graph,
    pub hierarchy: NetHierarchy,
    pub sampling: LevelSampling,
    pub records: Vec<Phase2Record>,
    /// `approx_pivot[i - 1][v]`: root of `v`'s tree in the SLT forest over `A_i`.
    pub approx_pivot: Vec<Vec<usize>>,
}

fn phase2_for_center(
    g: &Graph,
    h: &NetHierarchy,
    ls: &LevelSampling,
    eps: f64,
    u: usize,
) -> Result<Vec<Phase2Record>> {
    let level = ls.level_of[u];
    let top = level == ls.k;
    let ball = ls.ball(g, u)?;
    let threshold = (1.0 - eps) / 2.0 * ls.bunch_radius(u);
    let members: Vec<usize> = if top {
        ls.levels[ls.k].iter().copied().filter(|&v| v != u).collect()
    } else {
        (0..g.n())
            .filter(|&v| v != u && ls.level_of[v] >= level && ball.dist[v] < threshold)
            .collect()
    };

    let mut full = None;
    let mut out = Vec::with_capacity(members.len());
    for v in members {
        let d = ball.dist[v];
        let j = representative_level(eps, d);
        if j > h.top as i32 {
            return Err(Error::Structure(format!(
                "representative level {j} above the top net level {} for d = {d}",
                h.top
            )));
        }
        let target = h.representative(v, j);
        let tag = if top {
            PhaseTag::P2Top
        } else if j < 0 {
            PhaseTag::P2Direct
        } else {
            PhaseTag::P2Rep
        };
        let table = if ball.reached(target) {
            &ball
        } else {
            full.get_or_insert(dijkstra(g, u)?)
        };
        let path = table
            .tree_path_vertices(target)
            .ok_or(Error::Disconnected)?;
        out.push(Phase2Record {
            center: u,
            center_level: level,
            member: v,
            j,
            target,
            d_center_member: d,
            d_center_target: table.dist[target],
            tag,
            path,
        });
    }
    Ok(out)
}

/// Phase-2 connections for every vertex, in ascending center order.
pub fn phase2_paths(
    g: &Graph,
    h: &NetHierarchy,
    ls: &LevelSampling,
    eps: f64,
) -> Result<Vec<Phase2Record>> {
    let per_center = (0..g.n())
        .into_par_iter()
        .map(|u| phase2_for_center(g, h, ls, eps, u))
        .collect::<Result<Vec<_>>>()?;
    Ok(per_center.into_iter().flatten().collect())
}

/// Builds the light near-additive spanner.
pub fn build_spanner(g: &Graph, params: &SpannerParams) -> Result<Spanner> {
    Ok(build_spanner_with_internals(g, params)?.0)
}

pub fn build_spanner_with_internals(
    g: &Graph,
    params: &SpannerParams,
) -> Result<(Spanner, BuildInternals)> {
    check_eps(params.eps, params.unsafe_eps)?;
    if params.k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let (normalized, scale) = normalize(g)?;
    let eps = params.eps;
    let hierarchy = build_net_hierarchy(&normalized, eps, params.unsafe_eps)?;
    let sampling = sample_levels(&normalized, params.k, params.seed)?;
    let records = phase2_paths(&normalized, &hierarchy, &sampling, eps)?;
    let forests = (1..=params.k)
        .into_par_iter()
        .map(|i| slt_forest(&normalized, &sampling.levels[i], eps))
        .collect::<Result<Vec<_>>>()?;

    let mut tags: Vec<(usize, PhaseTag)> = hierarchy
        .h0_edges
        .iter()
        .map(|&id| (id, PhaseTag::H0))
        .collect();
    for r in &records {
        for pair in r.path.windows(2) {
            let id = normalized
                .edge_id(pair[0], pair[1])
                .expect("path edges belong to the graph");
            tags.push((id, r.tag));
        }
    }
    for f in &forests {
        tags.extend(f.edge_ids.iter().map(|&id| (id, PhaseTag::Slt)));
    }
    let spanner = Spanner::from_tags(
        g,
        SpannerKind::NearAdditive,
        *params,
        Some(sampling.effective_seed),
        scale,
        tags,
    );
    if !spanner.to_graph(g)?.is_connected() {
        return Err(Error::Structure("constructed spanner is disconnected".into()));
    }
    let internals = BuildInternals {
        normalized,
        hierarchy,
        sampling,
        records,
        approx_pivot: forests.into_iter().map(|f| f.pivot).collect(),
    };
    Ok((spanner, internals))
}

/// Builds the `(1+eps, 2(1+eps) W_max)` spanner: one SLT per point of a
/// greedy `sqrt(n)`-net on the normalized graph.
pub fn build_wmax_spanner(g: &Graph, eps: f64) -> Result<Spanner> {
    Ok(build_wmax_spanner_with_net(g, eps)?.0)
}

/// As [`build_wmax_spanner`], also returning the net (normalized units).
pub fn build_wmax_spanner_with_net(g: &Graph, eps: f64) -> Result<(Spanner, DeltaNet)> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
    }
    let (normalized, scale) = normalize(g)?;
    let root_n = (g.n() as f64).sqrt();
    let w_max = normalized.max_weight();
    if w_max < root_n {
        return Err(Error::Precondition(format!(
            "requires W_max >= sqrt(w(MST)); normalized W_max = {w_max} < sqrt(n) = {root_n}"
        )));
    }
    let net = greedy_delta_net(&normalized, root_n, &[])?;
    let trees = net
        .members
        .par_iter()
        .map(|&v| slt(&normalized, v, eps))
        .collect::<Result<Vec<_>>>()?;
    let tags = trees
        .iter()
        .flat_map(|t| t.edge_ids.iter().map(|&id| (id, PhaseTag::Slt)));
    let spanner = Spanner::from_tags(
        g,
        SpannerKind::MaxWeight,
        SpannerParams {
            eps,
            k: 1,
            seed: 0,
            unsafe_eps: false,
        },
        None,
        scale,
        tags,
    );
    Ok((spanner, net))
}
