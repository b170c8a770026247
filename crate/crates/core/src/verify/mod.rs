//! Exact certification of spanner guarantees and of the building blocks
//! (nets, shallow-light trees) the constructions rely on.

mod lemmas;
mod report;

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use lemmas::{verify_lemma_suite, LemmaCheck, LemmaReport};
pub use report::{SweepRow, REPORT_SCHEMA_VERSION, SWEEP_CSV_HEADER};

use crate::error::{Error, Result};
use crate::graph::{dijkstra, dijkstra_within, multi_source_dijkstra, Graph};
use crate::net::DeltaNet;
use crate::spanner::{PhaseSummary, PhaseTag, Spanner, SpannerKind};
use crate::tree::{mst_weight, slt_weight_factor, SpanningTree};

/// Relative slack allowed when comparing derived distances.
pub const REL_TOL: f64 = 1e-9;

/// Most violations listed in a report; the count is always exact.
pub const MAX_LISTED_VIOLATIONS: usize = 100;

pub(crate) fn within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs * (1.0 + REL_TOL)
}

/// `Δ = 7 + 14k/eps` from the stretch analysis.
pub fn stretch_delta(eps: f64, k: usize) -> f64 {
    7.0 + 14.0 * k as f64 / eps
}

/// Additive factor `24 (3Δ)^k` multiplying `W(x,y)`.
pub fn additive_factor(eps: f64, k: usize) -> f64 {
    24.0 * (3.0 * stretch_delta(eps, k)).powi(k as i32)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "unit", rename_all = "snake_case")]
pub enum AdditiveUnit {
    /// Heaviest edge of the min-bottleneck shortest path between the pair.
    Bottleneck,
    /// A fixed weight, the heaviest edge of the host graph.
    MaxWeight { w_max: f64 },
}

/// `d_H(x,y) <= multiplicative * d_G(x,y) + factor * unit(x,y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StretchBound {
    pub multiplicative: f64,
    pub factor: f64,
    pub unit: AdditiveUnit,
}

impl StretchBound {
    /// `(1 + 2eps) d + 24 (3Δ)^k W(x,y)`.
    pub fn near_additive(eps: f64, k: usize) -> Self {
        StretchBound {
            multiplicative: 1.0 + 2.0 * eps,
            factor: additive_factor(eps, k),
            unit: AdditiveUnit::Bottleneck,
        }
    }

    /// `(1 + eps) d + 2 (1 + eps) W_max`.
    pub fn max_weight(eps: f64, w_max: f64) -> Self {
        StretchBound {
            multiplicative: 1.0 + eps,
            factor: 2.0 * (1.0 + eps),
            unit: AdditiveUnit::MaxWeight { w_max },
        }
    }

    /// The guarantee the given spanner was built for, in host units.
    pub fn for_spanner(host: &Graph, sp: &Spanner) -> Self {
        match sp.kind {
            SpannerKind::NearAdditive => Self::near_additive(sp.params.eps, sp.params.k),
            SpannerKind::MaxWeight => Self::max_weight(sp.params.eps, host.max_weight()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum VerifyMode {
    AllPairs,
    /// All pairs from `sources` vertices drawn uniformly with `seed`.
    Sampled { sources: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub x: usize,
    pub y: usize,
    pub d_g: f64,
    pub d_h: f64,
    pub w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub schema_version: u32,
    pub mode: VerifyMode,
    pub sources_checked: usize,
    /// Ordered pairs `(x, y)`, `x != y`.
    pub pairs_checked: usize,
    pub multiplicative: f64,
    pub unit: AdditiveUnit,
    pub bound_used: f64,
    /// Max over pairs of `d_H / d_G`.
    pub worst_mult_stretch: f64,
    /// Max over pairs of `(d_H - multiplicative * d_G) / unit`, floored at 0.
    pub worst_additive_slack: f64,
    /// Pairs with `d_H < d_G`; impossible for a genuine subgraph.
    pub lower_bound_violations: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl StretchReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0 && self.lower_bound_violations == 0
    }
}

#[derive(Default)]
struct SourceSummary {
    pairs: usize,
    worst_mult: f64,
    worst_slack: f64,
    lower: usize,
    count: usize,
    listed: Vec<Violation>,
}

/// Checks every pair reachable from the chosen sources against `bound`.
pub fn verify_stretch(
    g: &Graph,
    sp: &Spanner,
    bound: &StretchBound,
    mode: VerifyMode,
) -> Result<StretchReport> {
    let h = sp.to_graph(g)?;
    let n = g.n();
    let sources: Vec<usize> = match mode {
        VerifyMode::AllPairs => (0..n).collect(),
        VerifyMode::Sampled { sources, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut picked = sample(&mut rng, n, sources.min(n)).into_vec();
            picked.sort_unstable();
            picked
        }
    };

    let per_source = sources
        .par_iter()
        .map(|&s| -> Result<SourceSummary> {
            let dg = dijkstra(g, s)?;
            let dh = dijkstra(&h, s)?;
            let mut out = SourceSummary {
                worst_mult: 1.0,
                ..Default::default()
            };
            for y in 0..n {
                if y == s {
                    continue;
                }
                let (d_g, d_h) = (dg.dist[y], dh.dist[y]);
                if !d_g.is_finite() {
                    return Err(Error::Disconnected);
                }
                out.pairs += 1;
                if d_h < d_g {
                    out.lower += 1;
                }
                let unit = match bound.unit {
                    AdditiveUnit::Bottleneck => dg.bottleneck[y],
                    AdditiveUnit::MaxWeight { w_max } => w_max,
                };
                out.worst_mult = out.worst_mult.max(d_h / d_g);
                let excess = d_h - bound.multiplicative * d_g;
                if excess > 0.0 {
                    out.worst_slack = out.worst_slack.max(excess / unit);
                }
                if !within(d_h, bound.multiplicative * d_g + bound.factor * unit) {
                    out.count += 1;
                    if out.listed.len() < MAX_LISTED_VIOLATIONS {
                        out.listed.push(Violation {
                            x: s,
                            y,
                            d_g,
                            d_h,
                            w: unit,
                        });
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut report = StretchReport {
        schema_version: REPORT_SCHEMA_VERSION,
        mode,
        sources_checked: sources.len(),
        pairs_checked: 0,
        multiplicative: bound.multiplicative,
        unit: bound.unit,
        bound_used: bound.factor,
        worst_mult_stretch: 1.0,
        worst_additive_slack: 0.0,
        lower_bound_violations: 0,
        violation_count: 0,
        violations: Vec::new(),
    };
    for s in per_source {
        report.pairs_checked += s.pairs;
        report.worst_mult_stretch = report.worst_mult_stretch.max(s.worst_mult);
        report.worst_additive_slack = report.worst_additive_slack.max(s.worst_slack);
        report.lower_bound_violations += s.lower;
        report.violation_count += s.count;
        let room = MAX_LISTED_VIOLATIONS - report.violations.len();
        report.violations.extend(s.listed.into_iter().take(room));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LightnessReport {
    pub schema_version: u32,
    pub spanner_weight: f64,
    pub mst_weight: f64,
    pub lightness: f64,
    pub size: usize,
    pub per_phase: BTreeMap<PhaseTag, PhaseSummary>,
}

impl LightnessReport {
    pub fn within_lightness(&self, limit: f64) -> bool {
        self.lightness <= limit
    }
}

/// Weight and size accounting in host units.
pub fn verify_lightness(g: &Graph, sp: &Spanner) -> Result<LightnessReport> {
    sp.check_host(g)?;
    let mst_w = mst_weight(g)?;
    let spanner_weight = sp.weight();
    let mut per_phase: BTreeMap<PhaseTag, PhaseSummary> = BTreeMap::new();
    for e in &sp.edges {
        let s = per_phase.entry(e.phase).or_default();
        s.edges += 1;
        s.weight += e.w;
    }
    Ok(LightnessReport {
        schema_version: REPORT_SCHEMA_VERSION,
        spanner_weight,
        mst_weight: mst_w,
        lightness: spanner_weight / mst_w,
        size: sp.size(),
        per_phase,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetCheck {
    pub delta: f64,
    pub size: usize,
    /// A vertex farther than `delta` from the net, with its distance.
    pub covering_witness: Option<(usize, f64)>,
    /// Two members at distance at most `delta`.
    pub packing_witness: Option<(usize, usize, f64)>,
    /// `|N| delta <= 2 w(MST)`; `None` when `|N| < 2`.
    pub mst_bound_holds: Option<bool>,
}

impl NetCheck {
    pub fn passed(&self) -> bool {
        self.covering_witness.is_none()
            && self.packing_witness.is_none()
            && self.mst_bound_holds != Some(false)
    }
}

/// Exact covering and packing checks, plus the net/MST size relation.
pub fn verify_net(g: &Graph, net: &DeltaNet) -> Result<NetCheck> {
    let delta = net.delta;
    if net.members.is_empty() {
        return Ok(NetCheck {
            delta,
            size: 0,
            covering_witness: (g.n() > 0).then_some((0, f64::INFINITY)),
            packing_witness: None,
            mst_bound_holds: None,
        });
    }
    let cover = multi_source_dijkstra(g, &net.members)?;
    let covering_witness = (0..g.n())
        .find(|&v| cover.dist[v] > delta)
        .map(|v| (v, cover.dist[v]));

    let mut packing_witness = None;
    for &s in &net.members {
        let ball = dijkstra_within(g, s, delta.next_up())?;
        if let Some(&t) = net.members.iter().find(|&&t| t != s && ball.reached(t)) {
            packing_witness = Some((s.min(t), s.max(t), ball.dist[t]));
            break;
        }
    }
    let mst_bound_holds = if net.members.len() >= 2 {
        Some(net.members.len() as f64 * delta <= 2.0 * mst_weight(g)?)
    } else {
        None
    };
    Ok(NetCheck {
        delta,
        size: net.members.len(),
        covering_witness,
        packing_witness,
        mst_bound_holds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SltCheck {
    pub is_spanning_tree: bool,
    /// Max over `x != root` of `d_T(root, x) / d_G(root, x)`.
    pub worst_depth_ratio: f64,
    /// `w(T) / w(MST)`.
    pub weight_ratio: f64,
    pub depth_ok: bool,
    pub weight_ok: bool,
}

impl SltCheck {
    pub fn passed(&self) -> bool {
        self.is_spanning_tree && self.depth_ok && self.weight_ok
    }
}

/// Both shallow-light conditions with `alpha = 1 + eps`, `gamma = 1 + 2/eps`,
/// checked without tolerance.
pub fn verify_slt(g: &Graph, t: &SpanningTree, root: usize, eps: f64) -> Result<SltCheck> {
    g.check_vertex(root)?;
    if t.edge_ids.iter().any(|&id| id >= g.m()) {
        return Err(Error::Structure("tree edge id outside the host graph".into()));
    }
    let tree = t.as_graph(g);
    let is_spanning_tree = tree.m() + 1 == g.n() && tree.is_connected();
    let dg = dijkstra(g, root)?;
    let dt = dijkstra(&tree, root)?;
    let alpha = 1.0 + eps;
    let mut depth_ok = true;
    let mut worst: f64 = 1.0;
    for x in 0..g.n() {
        if x == root {
            continue;
        }
        if !(dt.dist[x] <= alpha * dg.dist[x]) {
            depth_ok = false;
        }
        worst = worst.max(dt.dist[x] / dg.dist[x]);
    }
    let mst_w = mst_weight(g)?;
    let weight = tree.total_weight();
    Ok(SltCheck {
        is_spanning_tree,
        worst_depth_ratio: worst,
        weight_ratio: weight / mst_w,
        depth_ok,
        weight_ok: weight <= slt_weight_factor(eps) * mst_w,
    })
}
