use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{dijkstra, dijkstra_within, multi_source_dijkstra, DistanceTable, Graph};

/// Extra draws (`seed + 1`, `seed + 2`, ...) allowed when a level comes out empty.
pub const MAX_SAMPLING_RETRIES: u64 = 32;

/// Random hierarchy `V = A_0 ⊇ A_1 ⊇ ... ⊇ A_k` with pivot tables.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelSampling {
    pub k: usize,
    pub seed: u64,
    /// Seed of the accepted draw; differs from `seed` after retries.
    pub effective_seed: u64,
    /// `levels[i]` is `A_i`, ascending ids.
    pub levels: Vec<Vec<usize>>,
    /// Highest `i` with `v ∈ A_i`.
    pub level_of: Vec<usize>,
    /// `pivot_dist[i][v] = d(v, A_i)`.
    pub pivot_dist: Vec<Vec<f64>>,
    /// `pivot[i][v]`: nearest vertex of `A_i`, smallest id on ties.
    pub pivot: Vec<Vec<usize>>,
}

/// Promotion probability `n^{-1/k}`.
pub fn promotion_probability(n: usize, k: usize) -> f64 {
    (n as f64).powf(-1.0 / k as f64)
}

/// Draws `A_1..A_k` for one seed. Level `i` uses ChaCha stream `i`, so the
/// draws of different levels are independent streams of the same seed.
pub fn draw_levels(n: usize, k: usize, seed: u64) -> Vec<Vec<usize>> {
    let p = promotion_probability(n, k);
    let mut levels = vec![(0..n).collect::<Vec<_>>()];
    for i in 1..=k {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let next: Vec<usize> = levels[i - 1]
            .iter()
            .copied()
            .filter(|_| rng.gen::<f64>() < p)
            .collect();
        levels.push(next);
    }
    levels
}

/// Samples the level hierarchy, redrawing with the next seed while some
/// `A_i` with `i <= k` is empty.
pub fn sample_levels(g: &Graph, k: usize, seed: u64) -> Result<LevelSampling> {
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    g.require_connected()?;
    let n = g.n();
    for attempt in 0..=MAX_SAMPLING_RETRIES {
        let effective_seed = seed.wrapping_add(attempt);
        let levels = draw_levels(n, k, effective_seed);
        if levels.iter().any(|l| l.is_empty()) {
            continue;
        }
        let mut level_of = vec![0usize; n];
        for (i, level) in levels.iter().enumerate() {
            for &v in level {
                level_of[v] = i;
            }
        }
        let mut pivot_dist = Vec::with_capacity(k + 1);
        let mut pivot = Vec::with_capacity(k + 1);
        for level in &levels {
            let table = multi_source_dijkstra(g, level)?;
            pivot_dist.push(table.dist);
            pivot.push(table.root.into_iter().map(|r| r.expect("connected")).collect());
        }
        return Ok(LevelSampling {
            k,
            seed,
            effective_seed,
            levels,
            level_of,
            pivot_dist,
            pivot,
        });
    }
    Err(Error::Sampling(format!(
        "some level stayed empty for seeds {seed}..={}",
        seed.wrapping_add(MAX_SAMPLING_RETRIES)
    )))
}

impl LevelSampling {
    pub fn n(&self) -> usize {
        self.level_of.len()
    }

    pub fn in_level(&self, v: usize, i: usize) -> bool {
        self.level_of[v] >= i
    }

    /// Radius of the 1-bunch of `u`: `d(u, A_{i+1})` for `u ∈ A_i \ A_{i+1}`,
    /// infinite for `u ∈ A_k`.
    pub fn bunch_radius(&self, u: usize) -> f64 {
        let i = self.level_of[u];
        if i == self.k {
            f64::INFINITY
        } else {
            self.pivot_dist[i + 1][u]
        }
    }

    /// Shortest-path ball around `u` covering its whole 1-bunch.
    pub(crate) fn ball(&self, g: &Graph, u: usize) -> Result<DistanceTable> {
        let r = self.bunch_radius(u);
        if r.is_finite() {
            dijkstra_within(g, u, r)
        } else {
            dijkstra(g, u)
        }
    }
}

/// `δ`-bunch of a vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bunch {
    pub center: usize,
    pub level: usize,
    pub delta: f64,
    /// Ascending ids; includes the center itself.
    pub members: Vec<usize>,
}

/// For `u ∈ A_i \ A_{i+1}` with `i < k`: the `A_i` vertices at distance
/// strictly below `delta * d(u, A_{i+1})`. For `u ∈ A_k`: all of `A_k`.
pub fn bunch_of(ls: &LevelSampling, g: &Graph, u: usize, delta: f64) -> Result<Bunch> {
    g.check_vertex(u)?;
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::Parameter(format!("bunch delta must lie in (0, 1], got {delta}")));
    }
    let level = ls.level_of[u];
    let members = if level == ls.k {
        ls.levels[ls.k].clone()
    } else {
        let radius = delta * ls.pivot_dist[level + 1][u];
        let table = dijkstra_within(g, u, radius)?;
        (0..g.n())
            .filter(|&v| table.reached(v) && ls.level_of[v] >= level)
            .collect()
    };
    Ok(Bunch {
        center: u,
        level,
        delta,
        members,
    })
}
