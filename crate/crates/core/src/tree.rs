//! Minimum spanning trees and shallow-light trees.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{dijkstra, Edge, Graph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpanningTree {
    pub root: Option<usize>,
    /// Host edge ids, ascending.
    pub edge_ids: Vec<usize>,
    pub edges: Vec<Edge>,
    pub total_weight: f64,
}

impl SpanningTree {
    fn from_ids(g: &Graph, root: Option<usize>, mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        let edges: Vec<Edge> = ids.iter().map(|&id| g.edge(id)).collect();
        let total_weight = edges.iter().map(|e| e.w).sum();
        SpanningTree {
            root,
            edge_ids: ids,
            edges,
            total_weight,
        }
    }

    pub fn as_graph(&self, host: &Graph) -> Graph {
        host.subgraph(self.edge_ids.iter().copied())
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

fn kruskal(g: &Graph) -> Result<Vec<usize>> {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_by(|&a, &b| {
        let (ea, eb) = (g.edge(a), g.edge(b));
        ea.w.total_cmp(&eb.w)
            .then(ea.u.cmp(&eb.u))
            .then(ea.v.cmp(&eb.v))
    });
    let mut sets = DisjointSets::new(g.n());
    let mut chosen = Vec::with_capacity(g.n().saturating_sub(1));
    for id in order {
        let e = g.edge(id);
        if sets.union(e.u, e.v) {
            chosen.push(id);
        }
    }
    if chosen.len() + 1 != g.n() && g.n() > 0 {
        return Err(Error::Disconnected);
    }
    Ok(chosen)
}

/// Kruskal MST; weight ties broken by `(w, min id, max id)`.
pub fn mst(g: &Graph) -> Result<SpanningTree> {
    Ok(SpanningTree::from_ids(g, None, kruskal(g)?))
}

pub fn mst_weight(g: &Graph) -> Result<f64> {
    Ok(mst(g)?.total_weight)
}

/// Weight factor of the trees built by [`slt`]: `w(T) <= (1 + 2/eps) w(MST)`.
pub fn slt_weight_factor(eps: f64) -> f64 {
    1.0 + 2.0 / eps
}

/// Light approximate shortest-path tree (Khuller–Raghavachari–Young).
///
/// Walks the MST in DFS order from the root, relaxing tree edges in both
/// directions, and splices in the shortest-path-tree path to any vertex whose
/// running distance exceeds `alpha` times its true distance. The result is a
/// shortest-path tree of MST plus spliced paths, together with its parent
/// array (indexed by vertex, `None` at the root).
fn light_approximate_tree(g: &Graph, root: usize, alpha: f64) -> Result<(Vec<usize>, Vec<Option<usize>>)> {
    let n = g.n();
    let mst_ids = kruskal(g)?;
    let mut children: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    {
        let mut tree_adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &id in &mst_ids {
            let e = g.edge(id);
            tree_adj[e.u].push((e.v, e.w));
            tree_adj[e.v].push((e.u, e.w));
        }
        let mut seen = vec![false; n];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(x) = stack.pop() {
            for &(y, w) in &tree_adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    children[x].push((y, w));
                    stack.push(y);
                }
            }
        }
        for c in &mut children {
            c.sort_by_key(|&(y, _)| y);
        }
    }

    let spt = dijkstra(g, root)?;
    let exact = &spt.dist;
    let mut est = vec![f64::INFINITY; n];
    est[root] = 0.0;
    let mut keep = vec![false; g.m()];
    for &id in &mst_ids {
        keep[id] = true;
    }

    let splice = |v: usize, est: &mut Vec<f64>, keep: &mut Vec<bool>| {
        let mut x = v;
        while est[x] > exact[x] {
            est[x] = exact[x];
            let p = spt.parent[x].expect("non-root vertex has an SPT parent");
            keep[g.edge_id(x, p).expect("SPT edge exists")] = true;
            x = p;
        }
    };

    // Iterative DFS: (vertex, index of next child to descend into).
    let mut stack: Vec<(usize, usize)> = Vec::with_capacity(n);
    if est[root] > alpha * exact[root] {
        splice(root, &mut est, &mut keep);
    }
    stack.push((root, 0));
    while let Some(&mut (u, ref mut next)) = stack.last_mut() {
        if *next < children[u].len() {
            let (c, w) = children[u][*next];
            *next += 1;
            if est[u] + w < est[c] {
                est[c] = est[u] + w;
            }
            if est[c] > alpha * exact[c] {
                splice(c, &mut est, &mut keep);
            }
            stack.push((c, 0));
        } else {
            stack.pop();
            if let Some(&(p, _)) = stack.last() {
                let w = g.edge_weight(u, p).expect("tree edge exists");
                if est[u] + w < est[p] {
                    est[p] = est[u] + w;
                }
            }
        }
    }

    let support = g.subgraph((0..g.m()).filter(|&id| keep[id]));
    let table = dijkstra(&support, root)?;
    let ids = (0..n)
        .filter_map(|v| table.parent[v].map(|p| g.edge_id(v, p).expect("support edge in host")))
        .collect();
    Ok((ids, table.parent))
}

/// `(1 + eps, 1 + 2/eps)`-shallow-light tree rooted at `root`.
pub fn slt(g: &Graph, root: usize, eps: f64) -> Result<SpanningTree> {
    if !(eps > 0.0) {
        return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
    }
    g.check_vertex(root)?;
    g.require_connected()?;
    let (ids, _) = light_approximate_tree(g, root, 1.0 + eps)?;
    Ok(SpanningTree::from_ids(g, Some(root), ids))
}

/// SLT forest rooted at a vertex set, with each vertex's approximate pivot.
#[derive(Debug, Clone, PartialEq)]
pub struct SltForest {
    /// Real host edge ids, ascending.
    pub edge_ids: Vec<usize>,
    /// Root reached from each vertex along the forest.
    pub pivot: Vec<usize>,
}

/// SLT rooted at a virtual vertex joined to every root by a zero-weight edge,
/// with the virtual edges removed afterwards.
pub fn slt_forest(g: &Graph, roots: &[usize], eps: f64) -> Result<SltForest> {
    if !(eps > 0.0) {
        return Err(Error::Parameter(format!("eps must be positive, got {eps}")));
    }
    if roots.is_empty() {
        return Err(Error::Parameter("slt_forest needs at least one root".into()));
    }
    for &r in roots {
        g.check_vertex(r)?;
    }
    g.require_connected()?;
    let n = g.n();
    let virtual_root = n;
    let mut rs = roots.to_vec();
    rs.sort_unstable();
    rs.dedup();
    let augmented = Graph::new_allow_zero(
        n + 1,
        g.edges()
            .iter()
            .map(|e| (e.u, e.v, e.w))
            .chain(rs.iter().map(|&r| (r, virtual_root, 0.0))),
    )?;
    let (ids, parent) = light_approximate_tree(&augmented, virtual_root, 1.0 + eps)?;
    let mut edge_ids: Vec<usize> = ids.into_iter().filter(|&id| id < g.m()).collect();
    edge_ids.sort_unstable();

    let mut pivot: Vec<Option<usize>> = vec![None; n];
    for v in 0..n {
        let mut chain = Vec::new();
        let mut x = v;
        let found = loop {
            if let Some(p) = pivot[x] {
                break p;
            }
            match parent[x] {
                Some(p) if p == virtual_root => break x,
                Some(p) => {
                    chain.push(x);
                    x = p;
                }
                None => unreachable!("every real vertex hangs below the virtual root"),
            }
        };
        pivot[x] = Some(found);
        for c in chain {
            pivot[c] = Some(found);
        }
    }
    Ok(SltForest {
        edge_ids,
        pivot: pivot.into_iter().map(|p| p.expect("assigned")).collect(),
    })
}
