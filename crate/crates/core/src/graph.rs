//! Simple undirected graphs on dense 0-based vertex ids, and the structural
//! queries the rest of the crate leans on.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};

/// Anything with dense vertex ids and a neighbor list per vertex.
///
/// Parallel edges show up as repeated entries in `neighbors`.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[usize];
}

/// A finite simple undirected graph.
///
/// Neighbor lists are kept sorted so iteration order is reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        if let Some(labels) = &mut self.labels {
            labels.push(String::new());
        }
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let pos = match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(Error::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => pos,
        };
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.m += 1;
        Ok(())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, sorted ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n() {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) {
        let n = self.n();
        self.labels.get_or_insert_with(|| vec![String::new(); n])[v] = label.into();
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]` of `self`. Labels are carried over.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        let mut m = 0;
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX {
                    adj[i].push(j);
                    if i < j {
                        m += 1;
                    }
                }
            }
            adj[i].sort_unstable();
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| vertices.iter().map(|&v| l[v].clone()).collect());
        Graph { adj, m, labels }
    }

    /// The graph left after deleting `removed`, plus the surviving original ids
    /// in ascending order.
    pub fn without(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let kept: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        (self.induced_subgraph(&kept), kept)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|l| l.iter().map(|&v| v + off).collect()),
        );
        let labels = match (&self.labels, &other.labels) {
            (None, None) => None,
            (a, b) => {
                let mut l = a.clone().unwrap_or_else(|| vec![String::new(); self.n()]);
                l.extend(b.clone().unwrap_or_else(|| vec![String::new(); other.n()]));
                Some(l)
            }
        };
        Graph {
            adj,
            m: self.m + other.m,
            labels,
        }
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        set.iter().all(|&v| self.adj[v].iter().all(|&w| !inside[w]))
    }

    /// Shortest-path distances from `src`; `usize::MAX` marks unreachable.
    pub fn bfs_distances(&self, src: usize) -> Vec<usize> {
        bfs(self, src).0
    }
}

impl Adjacency for Graph {
    fn vertex_count(&self) -> usize {
        self.n()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

impl Graph {
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }
}

fn bfs<G: Adjacency>(g: &G, src: usize) -> (Vec<usize>, Vec<usize>) {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

/// Outcome of a bipartiteness test, with a certificate either way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bipartiteness {
    /// Side (0 or 1) of every vertex.
    Bipartite(Vec<u8>),
    /// An odd cycle as a vertex sequence; the closing edge back to the first
    /// vertex is implied.
    OddCycle(Vec<usize>),
}

impl Bipartiteness {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartiteness::Bipartite(_))
    }
}

pub fn is_bipartite(g: &Graph) -> Bipartiteness {
    let n = g.n();
    let mut side = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return Bipartiteness::OddCycle(odd_cycle(u, w, &parent, &depth));
                }
            }
        }
    }
    Bipartiteness::Bipartite(side)
}

/// Closes the two BFS-tree paths from `u` and `w` at their lowest common
/// ancestor. Same-side endpoints make the cycle odd.
fn odd_cycle(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, w);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    left
}

/// `None` when triangle-free, otherwise three mutually adjacent vertices.
pub fn find_triangle(g: &Graph) -> Option<[usize; 3]> {
    for u in 0..g.n() {
        for &v in g.neighbors(u).iter().filter(|&&v| v > u) {
            // merge the two sorted lists looking for w > v
            let (a, b) = (g.neighbors(u), g.neighbors(v));
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if a[i] > v {
                            return Some([u, v, a[i]]);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    None
}

pub fn is_triangle_free(g: &Graph) -> bool {
    find_triangle(g).is_none()
}

/// Maximum shortest-path distance, or `None` if some pair is unreachable.
/// The empty graph has diameter 0.
pub fn diameter(g: &Graph) -> Option<usize> {
    let mut best = 0;
    for v in 0..g.n() {
        let dist = g.bfs_distances(v);
        let far = *dist.iter().max().unwrap_or(&0);
        if far == usize::MAX {
            return None;
        }
        best = best.max(far);
    }
    Some(best)
}

/// Maximal connected vertex sets, each sorted, ordered by smallest member.
pub fn connected_components<G: Adjacency>(g: &G) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// A proper coloring with colors `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring(pub Vec<u32>);

impl Coloring {
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.0.len() == g.n() && g.edges().iter().all(|&(u, v)| self.0[u] != self.0[v])
    }

    pub fn max_color(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

/// Backtracking search for a proper `k`-coloring.
///
/// Vertices are colored in ascending id order, colors tried in ascending
/// order, with forward checking on uncolored neighbors.
pub fn find_proper_coloring(g: &Graph, k: u32, budget: &mut Budget) -> Result<Option<Coloring>> {
    if k == 0 {
        return Ok((g.n() == 0).then(|| Coloring(Vec::new())));
    }
    if k > 64 {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds 64 colors")));
    }
    let n = g.n();
    let mut colors = vec![0u32; n];
    // blocked[v][c] = number of colored neighbors using color c
    let mut blocked = vec![vec![0u32; k as usize + 1]; n];
    if color_from(g, 0, k, &mut colors, &mut blocked, budget)? {
        Ok(Some(Coloring(colors)))
    } else {
        Ok(None)
    }
}

fn color_from(
    g: &Graph,
    v: usize,
    k: u32,
    colors: &mut [u32],
    blocked: &mut [Vec<u32>],
    budget: &mut Budget,
) -> Result<bool> {
    if v == g.n() {
        return Ok(true);
    }
    budget.tick()?;
    for c in 1..=k {
        if blocked[v][c as usize] > 0 {
            continue;
        }
        colors[v] = c;
        let mut wiped = false;
        for &w in g.neighbors(v) {
            blocked[w][c as usize] += 1;
            if w > v && (1..=k).all(|d| blocked[w][d as usize] > 0) {
                wiped = true;
            }
        }
        if !wiped && color_from(g, v + 1, k, colors, blocked, budget)? {
            return Ok(true);
        }
        for &w in g.neighbors(v) {
            blocked[w][c as usize] -= 1;
        }
        colors[v] = 0;
    }
    Ok(false)
}
