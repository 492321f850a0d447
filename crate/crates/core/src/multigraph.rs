//! Multigraphs whose vertices carry a positive count and the list of original
//! vertices they stand for. Path contraction produces them.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Adjacency, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountedMultiGraph {
    /// Neighbor lists, sorted, with one entry per parallel edge.
    adj: Vec<Vec<usize>>,
    count: Vec<u64>,
    provenance: Vec<Vec<usize>>,
}

impl CountedMultiGraph {
    /// Unit counts; vertex `v` stands for original vertex `v`.
    pub fn from_graph(g: &Graph) -> Self {
        CountedMultiGraph {
            adj: (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect(),
            count: vec![1; g.n()],
            provenance: (0..g.n()).map(|v| vec![v]).collect(),
        }
    }

    /// Builds and validates a counted multigraph. `edges` may repeat pairs.
    pub fn new(provenance: Vec<Vec<usize>>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = provenance.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        let count = provenance.iter().map(|p| p.len() as u64).collect();
        let g = CountedMultiGraph {
            adj,
            count,
            provenance,
        };
        g.validate()?;
        Ok(g)
    }

    pub(crate) fn from_parts(adj: Vec<Vec<usize>>, provenance: Vec<Vec<usize>>) -> Self {
        let count = provenance.iter().map(|p| p.len() as u64).collect();
        let g = CountedMultiGraph {
            adj,
            count,
            provenance,
        };
        debug_assert!(g.validate().is_ok(), "{:?}", g.validate());
        g
    }

    /// Checks the type invariants: counts positive and equal to the
    /// provenance length, provenance lists pairwise disjoint, no loops,
    /// symmetric adjacency.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let mut owner = std::collections::HashMap::new();
        for v in 0..n {
            if self.count[v] == 0 || self.count[v] != self.provenance[v].len() as u64 {
                return Err(Error::Internal(format!(
                    "vertex {v}: count/provenance mismatch"
                )));
            }
            for &o in &self.provenance[v] {
                if let Some(w) = owner.insert(o, v) {
                    return Err(Error::Internal(format!(
                        "original vertex {o} claimed by {w} and {v}"
                    )));
                }
            }
            for &w in &self.adj[v] {
                if w == v {
                    return Err(Error::SelfLoop(v));
                }
                if self.multiplicity(v, w) != self.multiplicity(w, v) {
                    return Err(Error::Internal(format!("asymmetric edge {v}-{w}")));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Distinct neighbors of `v`, ascending.
    pub fn distinct_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        out.dedup();
        out
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.adj[u].iter().filter(|&&w| w == v).count()
    }

    #[inline]
    pub fn count(&self, v: usize) -> u64 {
        self.count[v]
    }

    #[inline]
    pub fn provenance(&self, v: usize) -> &[usize] {
        &self.provenance[v]
    }

    pub fn total_count(&self) -> u64 {
        self.count.iter().sum()
    }

    /// Edge multiset as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Subgraph induced by `keep`, in the given vertex order.
    pub fn induced(&self, keep: &[usize]) -> CountedMultiGraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                let mut l: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        CountedMultiGraph {
            adj,
            count: keep.iter().map(|&v| self.count[v]).collect(),
            provenance: keep.iter().map(|&v| self.provenance[v].clone()).collect(),
        }
    }

    pub fn without(&self, removed: &[usize]) -> CountedMultiGraph {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    /// Reorders vertices by their smallest original vertex. Provenance lists
    /// are disjoint, so this order does not depend on how the graph was built.
    pub fn canonical(&self) -> CountedMultiGraph {
        let mut order: Vec<usize> = (0..self.n()).collect();
        order.sort_by_key(|&v| self.provenance[v].iter().min().copied());
        self.induced(&order)
    }

    /// Underlying simple graph (parallel edges merged).
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            if !g.has_edge(u, v) {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }
}

impl Adjacency for CountedMultiGraph {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

/// A minimum-length cycle, or `None` for a forest.
///
/// A parallel pair is a cycle of length 2. Among all shortest cycles the
/// lexicographically smallest vertex sequence is returned; it starts at its
/// smallest vertex and continues toward the smaller of the two neighbors.
pub fn shortest_cycle(g: &CountedMultiGraph) -> Option<Vec<usize>> {
    for u in 0..g.n() {
        let l = g.neighbors(u);
        if let Some(w) = l.windows(2).find(|w| w[0] == w[1] && w[0] > u) {
            return Some(vec![u, w[0]]);
        }
    }
    let simple: Vec<Vec<usize>> = (0..g.n()).map(|v| g.distinct_neighbors(v)).collect();
    let len = girth(&simple)?;
    (0..g.n()).find_map(|s| smallest_cycle_from(&simple, s, len))
}

fn girth(adj: &[Vec<usize>]) -> Option<usize> {
    let n = adj.len();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 >= best {
                break;
            }
            for &y in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Lexicographically first cycle of exactly `len` vertices whose smallest
/// vertex is `s`.
fn smallest_cycle_from(adj: &[Vec<usize>], s: usize, len: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    // distances to s inside the subgraph on vertices >= s
    let mut dist = vec![usize::MAX; n];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if y >= s && dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    let mut path = vec![s];
    let mut on_path = vec![false; n];
    on_path[s] = true;
    extend_cycle(adj, s, len, &dist, &mut path, &mut on_path).then_some(path)
}

fn extend_cycle(
    adj: &[Vec<usize>],
    s: usize,
    len: usize,
    dist: &[usize],
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> bool {
    let last = *path.last().unwrap();
    if path.len() == len {
        return adj[last].binary_search(&s).is_ok();
    }
    let remaining = len - path.len();
    for &y in &adj[last] {
        if y <= s || on_path[y] || dist[y] > remaining {
            continue;
        }
        path.push(y);
        on_path[y] = true;
        if extend_cycle(adj, s, len, dist, path, on_path) {
            return true;
        }
        on_path[y] = false;
        path.pop();
    }
    false
}
