//! Exact solvers for small graphs (at most 64 vertices, bitset based).
//!
//! The deletion searches branch on a vertex-minimal non-2-choosable induced
//! subgraph of what is left: 2-choosability is inherited by induced
//! subgraphs, so every solution must delete one of its vertices.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::choosability::{is_2_choosable_induced, offending_component};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph the bitset solvers accept.
pub const MAX_VERTICES: usize = 64;

/// A near-3-choosable decomposition: `a` independent, `g[b]` 2-choosable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl Decomposition {
    /// `b` is the complement of `a`.
    pub fn from_a(g: &Graph, a: &[usize]) -> Self {
        let mut in_a = vec![false; g.n()];
        for &v in a {
            in_a[v] = true;
        }
        let mut a = a.to_vec();
        a.sort_unstable();
        a.dedup();
        Decomposition {
            a,
            b: (0..g.n()).filter(|&v| !in_a[v]).collect(),
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut side = vec![0u8; g.n()];
        for &v in self.a.iter().chain(&self.b) {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: g.n(),
                });
            }
            side[v] += 1;
        }
        if side.iter().any(|&s| s != 1) {
            return Err(Error::Internal(
                "A and B do not partition the vertices".into(),
            ));
        }
        if !g.is_independent(&self.a) {
            return Err(Error::Internal("A is not independent".into()));
        }
        let mut keep = vec![false; g.n()];
        for &v in &self.b {
            keep[v] = true;
        }
        if !is_2_choosable_induced(g, &keep) {
            return Err(Error::Internal("G[B] is not 2-choosable".into()));
        }
        Ok(())
    }
}

/// An optimal vertex set and its size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Optimum {
    pub size: usize,
    pub set: Vec<usize>,
}

fn check_size(g: &Graph) -> Result<()> {
    if g.n() > MAX_VERTICES {
        return Err(Error::TooLarge {
            n: g.n(),
            cap: MAX_VERTICES,
        });
    }
    Ok(())
}

fn adjacency_masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

fn to_vec(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

fn keep_vector(n: usize, alive: u64) -> Vec<bool> {
    (0..n).map(|v| alive >> v & 1 == 1).collect()
}

/// Calls `visit` on every maximal independent set (ascending vertex ids)
/// until it returns `true`. Bron–Kerbosch with pivoting on the complement.
/// Returns whether `visit` stopped the enumeration.
pub fn for_each_maximal_independent_set(
    g: &Graph,
    budget: &mut Budget,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<bool> {
    check_size(g)?;
    let n = g.n();
    let all = full_mask(n);
    let non_adj: Vec<u64> = adjacency_masks(g)
        .into_iter()
        .enumerate()
        .map(|(v, a)| all & !a & !(1 << v))
        .collect();
    bron_kerbosch(&non_adj, 0, all, 0, budget, &mut visit)
}

fn bron_kerbosch(
    non_adj: &[u64],
    r: u64,
    mut p: u64,
    mut x: u64,
    budget: &mut Budget,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> Result<bool> {
    budget.tick()?;
    if p == 0 && x == 0 {
        return Ok(visit(&to_vec(r)));
    }
    let pivot = bits(p | x).max_by_key(|&u| ((p & non_adj[u]).count_ones(), std::cmp::Reverse(u)));
    let candidates = match pivot {
        Some(u) => p & !non_adj[u],
        None => p,
    };
    for v in bits(candidates) {
        if bron_kerbosch(
            non_adj,
            r | 1 << v,
            p & non_adj[v],
            x & non_adj[v],
            budget,
            visit,
        )? {
            return Ok(true);
        }
        p &= !(1 << v);
        x |= 1 << v;
    }
    Ok(false)
}

pub fn maximal_independent_sets(g: &Graph, budget: &mut Budget) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_maximal_independent_set(g, budget, |s| {
        out.push(s.to_vec());
        false
    })?;
    out.sort();
    Ok(out)
}

/// Finds a near-3-choosable decomposition if one exists.
///
/// Only maximal independent sets are tried: removing more vertices keeps the
/// rest 2-choosable, so any valid `A` can be grown to a maximal one.
pub fn near_3_decide(g: &Graph, budget: &mut Budget) -> Result<Option<Decomposition>> {
    check_size(g)?;
    let mut found = None;
    for_each_maximal_independent_set(g, budget, |a| {
        let mut keep = vec![true; g.n()];
        for &v in a {
            keep[v] = false;
        }
        if is_2_choosable_induced(g, &keep) {
            found = Some(Decomposition::from_a(g, a));
            true
        } else {
            false
        }
    })?;
    Ok(found)
}

struct DeletionSearch<'a> {
    g: &'a Graph,
    adj: Vec<u64>,
    independent: bool,
    budget: &'a mut Budget,
}

impl DeletionSearch<'_> {
    /// Shrinks a non-2-choosable core component to a vertex-minimal
    /// non-2-choosable induced subgraph.
    fn minimize(&self, comp: &[usize]) -> u64 {
        let n = self.g.n();
        let mut set = comp.iter().fold(0u64, |m, &v| m | 1 << v);
        for &v in comp.iter().rev() {
            let smaller = set & !(1 << v);
            if !is_2_choosable_induced(self.g, &keep_vector(n, smaller)) {
                set = smaller;
            }
        }
        set
    }

    /// A deletion set of at most `k` vertices, none of them in `forbidden`.
    fn search(&mut self, alive: u64, k: usize, forbidden: u64) -> Result<Option<u64>> {
        self.budget.tick()?;
        let Some(comp) = offending_component(self.g, &keep_vector(self.g.n(), alive)) else {
            return Ok(Some(0));
        };
        if k == 0 {
            return Ok(None);
        }
        let obstruction = self.minimize(&comp);
        let mut forbidden = forbidden;
        for v in bits(obstruction) {
            if forbidden >> v & 1 == 1 {
                continue;
            }
            let extra = if self.independent { self.adj[v] } else { 0 };
            if let Some(rest) = self.search(alive & !(1 << v), k - 1, forbidden | extra)? {
                return Ok(Some(rest | 1 << v));
            }
            // later branches leave v in place
            forbidden |= 1 << v;
        }
        Ok(None)
    }

    fn minimum_size(&mut self, upper: usize) -> Result<Option<usize>> {
        let all = full_mask(self.g.n());
        for k in 0..=upper {
            if self.search(all, k, 0)?.is_some() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Lexicographically smallest deletion set of exactly `size` vertices,
    /// given that `size` is optimal.
    fn smallest_optimum(&mut self, size: usize) -> Result<u64> {
        let n = self.g.n();
        let all = full_mask(n);
        let mut chosen = 0u64;
        let mut decided_out = 0u64;
        let mut remaining = size;
        for v in 0..n {
            if remaining == 0 {
                break;
            }
            let blocked = if self.independent {
                bits(chosen).fold(0, |m, u| m | self.adj[u])
            } else {
                0
            };
            if blocked >> v & 1 == 1 {
                decided_out |= 1 << v;
                continue;
            }
            let with_v = chosen | 1 << v;
            let mut forbidden = decided_out | blocked;
            if self.independent {
                forbidden |= self.adj[v];
            }
            if self
                .search(all & !with_v, remaining - 1, forbidden)?
                .is_some()
            {
                chosen = with_v;
                remaining -= 1;
            } else {
                decided_out |= 1 << v;
            }
        }
        if remaining != 0 {
            return Err(Error::Internal("optimum could not be reconstructed".into()));
        }
        Ok(chosen)
    }
}

/// Minimum vertex set whose deletion leaves a 2-choosable graph; the
/// lexicographically smallest among optima.
pub fn min_2_del_exact(g: &Graph, budget: &mut Budget) -> Result<Optimum> {
    check_size(g)?;
    let mut s = DeletionSearch {
        g,
        adj: adjacency_masks(g),
        independent: false,
        budget,
    };
    let size = s
        .minimum_size(g.n())?
        .expect("deleting everything always works");
    let chosen = s.smallest_optimum(size)?;
    if !is_2_choosable_induced(g, &keep_vector(g.n(), full_mask(g.n()) & !chosen)) {
        return Err(Error::Internal(
            "deletion set leaves a non-2-choosable graph".into(),
        ));
    }
    Ok(Optimum {
        size,
        set: to_vec(chosen),
    })
}

/// Minimum independent set whose deletion leaves a 2-choosable graph, or
/// `None` if the graph is not near-3-choosable.
pub fn min_near_3(g: &Graph, budget: &mut Budget) -> Result<Option<Optimum>> {
    check_size(g)?;
    let Some(witness) = near_3_decide(g, budget)? else {
        return Ok(None);
    };
    let mut s = DeletionSearch {
        g,
        adj: adjacency_masks(g),
        independent: true,
        budget,
    };
    let size = s
        .minimum_size(witness.a.len())?
        .ok_or_else(|| Error::Internal("known decomposition not found by search".into()))?;
    let set = to_vec(s.smallest_optimum(size)?);
    Decomposition::from_a(g, &set).validate(g)?;
    Ok(Some(Optimum { size, set }))
}

/// Minimum vertex cover by iterative deepening, branching on the endpoints
/// of the first uncovered edge.
pub fn min_vertex_cover_exact(g: &Graph, budget: &mut Budget) -> Result<Optimum> {
    check_size(g)?;
    let adj = adjacency_masks(g);
    for k in 0..=g.n() {
        if let Some(cover) = cover_search(&adj, full_mask(g.n()), k, budget)? {
            let set = to_vec(cover);
            return Ok(Optimum {
                size: set.len(),
                set,
            });
        }
    }
    unreachable!("all vertices form a cover")
}

fn cover_search(adj: &[u64], alive: u64, k: usize, budget: &mut Budget) -> Result<Option<u64>> {
    budget.tick()?;
    let Some(u) = bits(alive).find(|&u| adj[u] & alive != 0) else {
        return Ok(Some(0));
    };
    if k == 0 {
        return Ok(None);
    }
    if let Some(c) = cover_search(adj, alive & !(1 << u), k - 1, budget)? {
        return Ok(Some(c | 1 << u));
    }
    // u stays uncovered, so all of its live neighbors join the cover
    let nbrs = adj[u] & alive;
    let cnt = nbrs.count_ones() as usize;
    if cnt > k {
        return Ok(None);
    }
    Ok(cover_search(adj, alive & !nbrs & !(1 << u), k - cnt, budget)?.map(|c| c | nbrs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choosability::is_2_choosable;
    use crate::generators::{complete, complete_bipartite, cycle, path, petersen};

    fn b() -> Budget {
        Budget::unlimited()
    }

    #[test]
    fn near_3_examples() {
        let d = near_3_decide(&cycle(5), &mut b()).unwrap().unwrap();
        d.validate(&cycle(5)).unwrap();
        assert_eq!(d.a.len(), 2);
        // K4 minus an independent vertex is a triangle
        assert!(near_3_decide(&complete(4), &mut b()).unwrap().is_none());
        assert!(min_near_3(&complete(4), &mut b()).unwrap().is_none());
    }

    #[test]
    fn min_near_3_examples() {
        assert_eq!(
            min_near_3(&cycle(6), &mut b()).unwrap().unwrap(),
            Optimum {
                size: 0,
                set: vec![]
            }
        );
        assert_eq!(
            min_near_3(&complete_bipartite(2, 4), &mut b())
                .unwrap()
                .unwrap(),
            Optimum {
                size: 1,
                set: vec![0]
            }
        );
    }

    #[test]
    fn min_2_del_examples() {
        assert_eq!(
            min_2_del_exact(&cycle(3), &mut b()).unwrap(),
            Optimum {
                size: 1,
                set: vec![0]
            }
        );
        assert_eq!(min_2_del_exact(&cycle(6), &mut b()).unwrap().size, 0);
        // K_{2,4}: one leaf is enough, and vertex 0 (a hub) is the smallest choice
        assert_eq!(
            min_2_del_exact(&complete_bipartite(2, 4), &mut b())
                .unwrap()
                .set,
            vec![0]
        );
        let p = min_2_del_exact(&petersen(), &mut b()).unwrap();
        let (rest, _) = petersen().without(&p.set);
        assert!(is_2_choosable(&rest).is_choosable());
    }

    #[test]
    fn vertex_cover_examples() {
        assert_eq!(
            min_vertex_cover_exact(&path(2), &mut b()).unwrap(),
            Optimum {
                size: 1,
                set: vec![0]
            }
        );
        assert_eq!(min_vertex_cover_exact(&cycle(5), &mut b()).unwrap().size, 3);
        assert_eq!(
            min_vertex_cover_exact(&complete(4), &mut b()).unwrap().size,
            3
        );
        assert_eq!(
            min_vertex_cover_exact(&Graph::new(3), &mut b())
                .unwrap()
                .size,
            0
        );
    }

    #[test]
    fn mis_enumeration() {
        assert_eq!(
            maximal_independent_sets(&cycle(4), &mut b()).unwrap(),
            vec![vec![0, 2], vec![1, 3]]
        );
        // C5 has five maximal independent sets, all of size 2
        assert_eq!(
            maximal_independent_sets(&cycle(5), &mut b()).unwrap().len(),
            5
        );
        assert_eq!(
            maximal_independent_sets(&Graph::new(0), &mut b()).unwrap(),
            vec![Vec::<usize>::new()]
        );
    }

    #[test]
    fn budget_and_size_errors() {
        assert!(matches!(
            min_2_del_exact(&petersen(), &mut Budget::new(3)),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            near_3_decide(&Graph::new(65), &mut b()),
            Err(Error::TooLarge { n: 65, cap: 64 })
        ));
    }

    #[test]
    fn decomposition_validation_catches_errors() {
        let g = cycle(5);
        assert!(Decomposition::from_a(&g, &[0, 1]).validate(&g).is_err());
        assert!(Decomposition::from_a(&g, &[]).validate(&g).is_err());
        assert!(Decomposition::from_a(&g, &[0]).validate(&g).is_ok());
    }
}
