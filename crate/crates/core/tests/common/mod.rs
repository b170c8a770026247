//! Independent reference implementations used to cross-check the library.
#![allow(dead_code)]

use lightspan::{Graph, LevelSampling};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bellman–Ford over the undirected edge list.
pub fn bellman_ford(g: &Graph, s: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.n()];
    dist[s] = 0.0;
    for _ in 0..g.n() {
        let mut changed = false;
        for e in g.edges() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                let cand = dist[a] + e.w;
                if cand < dist[b] {
                    dist[b] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Shortest distance and min-bottleneck among shortest paths, by
/// enumerating every simple path from `s`.
pub fn enumerate_paths(g: &Graph, s: usize) -> (Vec<f64>, Vec<f64>) {
    let n = g.n();
    let mut best = vec![(f64::INFINITY, f64::INFINITY); n];
    best[s] = (0.0, 0.0);
    let mut on_path = vec![false; n];
    fn walk(
        g: &Graph,
        x: usize,
        len: f64,
        bottleneck: f64,
        on_path: &mut [bool],
        best: &mut [(f64, f64)],
    ) {
        on_path[x] = true;
        for a in g.neighbors(x) {
            if on_path[a.to] {
                continue;
            }
            let (l, b) = (len + a.w, bottleneck.max(a.w));
            let cur = &mut best[a.to];
            if l < cur.0 || (l == cur.0 && b < cur.1) {
                *cur = (l, b);
            }
            walk(g, a.to, l, b, on_path, best);
        }
        on_path[x] = false;
    }
    walk(g, s, 0.0, 0.0, &mut on_path, &mut best);
    best.into_iter().unzip()
}

/// Minimum spanning-tree weight over all `(n-1)`-edge subsets.
pub fn enumerate_spanning_trees(g: &Graph) -> f64 {
    let n = g.n();
    let m = g.m();
    let mut best = f64::INFINITY;
    let mut chosen = Vec::with_capacity(n - 1);
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            x = parent[x];
        }
        x
    }
    fn rec(g: &Graph, start: usize, chosen: &mut Vec<usize>, best: &mut f64) {
        let need = g.n() - 1;
        if chosen.len() == need {
            let mut parent: Vec<usize> = (0..g.n()).collect();
            for &id in chosen.iter() {
                let e = g.edge(id);
                let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
                if a == b {
                    return;
                }
                parent[a] = b;
            }
            let w: f64 = chosen.iter().map(|&id| g.edge(id).w).sum();
            if w < *best {
                *best = w;
            }
            return;
        }
        for id in start..g.m() {
            if g.m() - id < need - chosen.len() {
                break;
            }
            chosen.push(id);
            rec(g, id + 1, chosen, best);
            chosen.pop();
        }
    }
    if m + 1 >= n {
        rec(g, 0, &mut chosen, &mut best);
    }
    best
}

/// Bunch membership filtered from full single-source distances.
pub fn brute_bunch(ls: &LevelSampling, g: &Graph, u: usize, delta: f64) -> Vec<usize> {
    let level = ls.level_of[u];
    if level == ls.k {
        return ls.levels[ls.k].clone();
    }
    let d = bellman_ford(g, u);
    let radius = delta * ls.pivot_dist[level + 1][u];
    (0..g.n())
        .filter(|&v| ls.level_of[v] >= level && d[v] < radius)
        .collect()
}

/// Pointwise minimum of single-source distances.
pub fn pointwise_min(g: &Graph, sources: &[usize]) -> Vec<f64> {
    let mut out = vec![f64::INFINITY; g.n()];
    for &s in sources {
        for (o, d) in out.iter_mut().zip(bellman_ford(g, s)) {
            *o = o.min(d);
        }
    }
    out
}

/// Connected graph: a random spanning tree plus `extra` random chords.
/// With `integral` set, weights are integers in `1..=20`.
pub fn random_connected(n: usize, extra: usize, seed: u64, integral: bool) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        if integral {
            rng.gen_range(1..=20) as f64
        } else {
            rng.gen_range(0.1..10.0)
        }
    };
    let mut edges = std::collections::BTreeMap::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v), draw(&mut rng));
    }
    if n >= 2 {
        for _ in 0..extra {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                let w = draw(&mut rng);
                edges.entry((a.min(b), a.max(b))).or_insert(w);
            }
        }
    }
    Graph::new(n, edges.into_iter().map(|((u, v), w)| (u, v, w))).unwrap()
}

/// All-pairs distances by Floyd–Warshall.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0.0;
    }
    for e in g.edges() {
        d[e.u][e.v] = d[e.u][e.v].min(e.w);
        d[e.v][e.u] = d[e.v][e.u].min(e.w);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let c = d[i][k] + d[k][j];
                if c < d[i][j] {
                    d[i][j] = c;
                }
            }
        }
    }
    d
}
