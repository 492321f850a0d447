//! Exhaustive enumeration of small labeled graphs.
//!
//! A graph on `n <= 11` vertices is encoded as a bitmask over the
//! `n(n-1)/2` vertex pairs in lexicographic order.

use crate::graph::{connected_components, Graph};

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let edges: Vec<_> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Every labeled graph on `n` vertices (`2^(n(n-1)/2)` of them).
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n <= 11, "too many graphs to enumerate");
    let bits = n * n.saturating_sub(1) / 2;
    (0..1u64 << bits).map(move |mask| graph_from_mask(n, mask))
}

pub fn is_connected(g: &Graph) -> bool {
    connected_components(g).len() <= 1
}

/// Smallest edge mask over all vertex relabelings; equal for isomorphic
/// graphs. Brute force over `n!` permutations, meant for `n <= 7`.
pub fn canonical_mask(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 8);
    let index = |u: usize, v: usize| -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        a * (2 * n - a - 1) / 2 + (b - a - 1)
    };
    let edges = g.edges();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mask = edges
            .iter()
            .fold(0u64, |m, &(u, v)| m | 1 << index(perm[u], perm[v]));
        best = best.min(mask);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best
}

/// One graph per isomorphism class on `n <= 7` vertices, ordered by
/// canonical mask.
pub fn class_representatives(n: usize) -> Vec<Graph> {
    assert!(n <= 7);
    let mut seen = std::collections::BTreeSet::new();
    let candidates: Box<dyn Iterator<Item = Graph>> = if n <= 6 {
        Box::new(all_graphs(n))
    } else {
        Box::new(
            class_representatives(n - 1)
                .into_iter()
                .flat_map(|g| one_vertex_extensions(&g).collect::<Vec<_>>()),
        )
    };
    for g in candidates {
        seen.insert(canonical_mask(&g));
    }
    seen.into_iter()
        .map(|mask| graph_from_mask(n, mask))
        .collect()
}

/// `g` plus one new vertex, once for every neighbor set of the new vertex.
/// Applied to one graph per class on `n` vertices this meets every class
/// on `n + 1` vertices.
pub fn one_vertex_extensions(g: &Graph) -> impl Iterator<Item = Graph> + '_ {
    let n = g.n();
    assert!(n < 20);
    (0..1u32 << n).map(move |nbrs| {
        let mut h = g.clone();
        let x = h.add_vertex();
        for v in 0..n {
            if nbrs >> v & 1 == 1 {
                h.add_edge(v, x).unwrap();
            }
        }
        h
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
