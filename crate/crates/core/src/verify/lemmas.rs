//! Exhaustive instantiation of the structural lemmas behind the stretch,
//! lightness and size guarantees, evaluated on the internals retained by
//! [`build_spanner_with_internals`](crate::spanner::build_spanner_with_internals).

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::within;
use crate::error::{Error, Result};
use crate::graph::{dijkstra, Graph};
use crate::net::scale_of;
use crate::spanner::{bunch_of, BuildInternals, Phase2Record, PhaseTag, Spanner};

/// Largest graph the suite accepts; it holds all-pairs distances in memory.
pub const MAX_LEMMA_SUITE_N: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    /// Witness of the first failure.
    pub counterexample: Option<String>,
}

impl LemmaCheck {
    fn new(name: &str) -> Self {
        LemmaCheck {
            name: name.to_string(),
            instances: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }

    fn merge(&mut self, other: LemmaCheck) {
        self.instances += other.instances;
        self.failures += other.failures;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    /// `d_H(u,v) <= (1+eps) d(u,v)` for every `v` in the `(1-eps)/2`-bunch of `u`.
    pub distance_in_bunch: LemmaCheck,
    /// Each `C_ij(x)` lies in the 1-bunch of its member farthest from `x`.
    pub half_bunch_in_bunch: LemmaCheck,
    /// `d_{H_0}(v, r_i(v)) <= (1+2eps) 2^i`, `r_i(v) ∈ N_i`.
    pub representative: LemmaCheck,
    /// `d(u, r(u,v)) <= (1 + eps/2) d(u,v)` for representative paths.
    pub representative_path_length: LemmaCheck,
    /// Intersecting phase-2 paths have all four endpoints inside the 1-ball
    /// of one of the two centers.
    pub paths_intersect: LemmaCheck,
}

impl LemmaReport {
    pub fn checks(&self) -> [&LemmaCheck; 5] {
        [
            &self.distance_in_bunch,
            &self.half_bunch_in_bunch,
            &self.representative,
            &self.representative_path_length,
            &self.paths_intersect,
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed())
    }
}

fn all_pairs(g: &Graph) -> Result<Vec<Vec<f64>>> {
    (0..g.n())
        .into_par_iter()
        .map(|s| dijkstra(g, s).map(|t| t.dist))
        .collect()
}

/// Runs every lemma check; distances are taken on the normalized graph.
pub fn verify_lemma_suite(
    host: &Graph,
    sp: &Spanner,
    internals: &BuildInternals,
) -> Result<LemmaReport> {
    sp.check_host(host)?;
    let g = &internals.normalized;
    if g.n() != host.n() || g.m() != host.m() {
        return Err(Error::Structure("internals belong to a different graph".into()));
    }
    if g.n() > MAX_LEMMA_SUITE_N {
        return Err(Error::Parameter(format!(
            "lemma suite limited to n <= {MAX_LEMMA_SUITE_N}"
        )));
    }
    let eps = sp.params.eps;
    let ls = &internals.sampling;
    let hier = &internals.hierarchy;
    let h = g.subgraph(sp.edge_ids());
    let dist = all_pairs(g)?;
    let radius = |u: usize| ls.bunch_radius(u);

    // Bunches are re-derived from the sampling, not read from the records.
    let distance_in_bunch = (0..g.n())
        .into_par_iter()
        .map(|u| -> Result<LemmaCheck> {
            let mut check = LemmaCheck::new("distance_in_bunch");
            let bunch = bunch_of(ls, g, u, (1.0 - eps) / 2.0)?;
            let dh = dijkstra(&h, u)?;
            for &v in bunch.members.iter().filter(|&&v| v != u) {
                let d = dist[u][v];
                check.record(within(dh.dist[v], (1.0 + eps) * d), || {
                    format!("u={u} v={v} d={d} d_H={}", dh.dist[v])
                });
            }
            Ok(check)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(LemmaCheck::new("distance_in_bunch"), |mut acc, c| {
            acc.merge(c);
            acc
        });

    let mut half_bunch_in_bunch = LemmaCheck::new("half_bunch_in_bunch");
    let mut groups: BTreeMap<(usize, i32, usize), Vec<usize>> = BTreeMap::new();
    for r in internals.records.iter().filter(|r| r.j >= 0 && r.center_level < ls.k) {
        groups
            .entry((r.center_level, r.j, r.target))
            .or_default()
            .push(r.center);
    }
    for ((i, j, x), mut centers) in groups {
        centers.sort_unstable();
        centers.dedup();
        let far = *centers
            .iter()
            .max_by(|&&a, &&b| dist[x][a].total_cmp(&dist[x][b]).then(b.cmp(&a)))
            .expect("non-empty group");
        let r = radius(far);
        let escaped = centers
            .iter()
            .find(|&&c| !(ls.level_of[c] >= i && dist[far][c] < r * (1.0 + super::REL_TOL)));
        half_bunch_in_bunch.record(escaped.is_none(), || {
            format!(
                "i={i} j={j} x={x} farthest={far} escaped={:?} radius={r}",
                escaped
            )
        });
    }

    let h0 = hier.h0_graph(g);
    let representative = (0..g.n())
        .into_par_iter()
        .map(|v| -> Result<LemmaCheck> {
            let mut check = LemmaCheck::new("representative");
            let t = dijkstra(&h0, v)?;
            for i in 0..=hier.top {
                let x = hier.rep[i][v];
                let limit = (1.0 + 2.0 * eps) * scale_of(i as i32);
                let ok = hier.levels[i].contains(x)
                    && within(t.dist[x], limit)
                    && (!hier.levels[i].contains(v) || x == v);
                check.record(ok, || {
                    format!("v={v} i={i} rep={x} d_H0={} limit={limit}", t.dist[x])
                });
            }
            Ok(check)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(LemmaCheck::new("representative"), |mut acc, c| {
            acc.merge(c);
            acc
        });

    let mut representative_path_length = LemmaCheck::new("representative_path_length");
    for r in internals.records.iter().filter(|r| r.tag == PhaseTag::P2Rep) {
        let (u, v, x) = (r.center, r.member, r.target);
        representative_path_length.record(
            within(dist[u][x], (1.0 + eps / 2.0) * dist[u][v]),
            || format!("u={u} v={v} x={x} d(u,x)={} d(u,v)={}", dist[u][x], dist[u][v]),
        );
    }

    let in_ball = |c: usize, z: usize| dist[c][z] < radius(c) * (1.0 + super::REL_TOL);
    let mut paths_intersect = LemmaCheck::new("paths_intersect");
    for level in 0..ls.k {
        let paths: Vec<&Phase2Record> = internals
            .records
            .iter()
            .filter(|r| r.center_level == level && r.path.len() > 1)
            .collect();
        let mut through: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (idx, r) in paths.iter().enumerate() {
            for &z in &r.path {
                through[z].push(idx);
            }
        }
        // Each unordered pair is examined once, from its smaller index.
        let level_check = (0..paths.len())
            .into_par_iter()
            .map_init(
                || vec![usize::MAX; paths.len()],
                |mark, a| {
                    let mut check = LemmaCheck::new("paths_intersect");
                    let p = paths[a];
                    let own_ok = in_ball(p.center, p.target);
                    for &z in &p.path {
                        for &b in through[z].iter().filter(|&&b| b > a) {
                            if mark[b] == a {
                                continue;
                            }
                            mark[b] = a;
                            let q = paths[b];
                            let in_p = own_ok && in_ball(p.center, q.center) && in_ball(p.center, q.target);
                            let in_q = || {
                                in_ball(q.center, q.target)
                                    && in_ball(q.center, p.center)
                                    && in_ball(q.center, p.target)
                            };
                            check.record(in_p || in_q(), || {
                                format!(
                                    "level={level} paths ({}->{}) and ({}->{}) meet at {z}",
                                    p.center, p.target, q.center, q.target
                                )
                            });
                        }
                    }
                    check
                },
            )
            .reduce(
                || LemmaCheck::new("paths_intersect"),
                |mut acc, c| {
                    acc.merge(c);
                    acc
                },
            );
        paths_intersect.merge(level_check);
    }

    Ok(LemmaReport {
        distance_in_bunch,
        half_bunch_in_bunch,
        representative,
        representative_path_length,
        paths_intersect,
    })
}
