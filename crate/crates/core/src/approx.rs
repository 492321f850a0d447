//! Counted-multigraph preprocessing, the C′ classifier, and greedy
//! short-cycle deletion for the 2-choosable-deletion problem.
//!
//! Preprocessing deletes degree-1 vertices and contracts every maximal path
//! of two or more degree-2 vertices into one vertex whose count is the number
//! of original vertices it replaces. A connected graph is 2-choosable exactly
//! when its preprocessed form is one of:
//!
//! * a single vertex (any count),
//! * two vertices joined by two parallel edges, with even count sum,
//! * `K_{2,3}` with unit counts except possibly one degree-2 vertex whose
//!   count is odd.

use serde::{Deserialize, Serialize};

use crate::choosability::is_2_choosable;
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};
use crate::multigraph::{shortest_cycle, CountedMultiGraph};

/// Runs the preprocessing to a fixed point and returns the result in
/// canonical vertex order (by smallest original vertex).
pub fn preprocess(g: &CountedMultiGraph) -> CountedMultiGraph {
    contract_paths(&peel_leaves(g)).canonical()
}

/// Repeatedly deletes a degree-1 vertex, smallest id first.
fn peel_leaves(g: &CountedMultiGraph) -> CountedMultiGraph {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    while let Some(v) = leaves.pop_first() {
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                match deg[w] {
                    1 => {
                        leaves.insert(w);
                    }
                    0 => {
                        leaves.remove(&w);
                    }
                    _ => {}
                }
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    g.induced(&keep)
}

/// A run of degree-2 vertices to be merged into one.
struct Contraction {
    path: Vec<usize>,
    /// External neighbors of the two ends (equal for a cycle or a loop-back).
    ends: (usize, usize),
}

/// Contracts every maximal path of at least two degree-2 vertices with
/// distinct ends. A component that is a cycle keeps its smallest vertex and
/// contracts the rest, which yields a parallel pair.
fn contract_paths(g: &CountedMultiGraph) -> CountedMultiGraph {
    let n = g.n();
    let is_deg2 = |v: usize| g.degree(v) == 2;
    let mut seen = vec![false; n];
    let mut contractions = Vec::new();

    for v in 0..n {
        if seen[v] || !is_deg2(v) {
            continue;
        }
        // the run of degree-2 vertices containing v
        let mut run = vec![v];
        seen[v] = true;
        let mut i = 0;
        while i < run.len() {
            let u = run[i];
            i += 1;
            for &w in g.neighbors(u) {
                if is_deg2(w) && !seen[w] {
                    seen[w] = true;
                    run.push(w);
                }
            }
        }
        let closed = run
            .iter()
            .all(|&u| g.neighbors(u).iter().all(|&w| is_deg2(w)));
        if closed {
            if run.len() < 3 {
                continue;
            }
            let keep = *run.iter().min().unwrap();
            let path = walk(g, keep, *g.neighbors(keep).iter().min().unwrap(), |w| {
                w == keep
            });
            contractions.push(Contraction {
                path,
                ends: (keep, keep),
            });
        } else {
            if run.len() < 2 {
                continue;
            }
            // ends are the run vertices with an outside neighbor
            let mut ends: Vec<usize> = run
                .iter()
                .copied()
                .filter(|&u| g.neighbors(u).iter().any(|&w| !is_deg2(w)))
                .collect();
            ends.sort_unstable();
            let first = ends[0];
            let w = g
                .neighbors(first)
                .iter()
                .copied()
                .find(|&x| !is_deg2(x))
                .unwrap();
            let path = walk(g, w, first, |x| !is_deg2(x));
            // the far external neighbor is the one not used to enter
            let (prev, last) = (path[path.len() - 2], path[path.len() - 1]);
            let z = g
                .neighbors(last)
                .iter()
                .copied()
                .find(|&x| x != prev)
                .unwrap();
            contractions.push(Contraction { path, ends: (w, z) });
        }
    }

    if contractions.is_empty() {
        return g.clone();
    }
    let mut merged = vec![false; n];
    for c in &contractions {
        for &u in &c.path {
            merged[u] = true;
        }
    }
    let survivors: Vec<usize> = (0..n).filter(|&v| !merged[v]).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in survivors.iter().enumerate() {
        index[v] = i;
    }
    let mut provenance: Vec<Vec<usize>> = survivors
        .iter()
        .map(|&v| g.provenance(v).to_vec())
        .collect();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| !merged[u] && !merged[v])
        .map(|(u, v)| (index[u], index[v]))
        .collect();
    for c in &contractions {
        let s = provenance.len();
        provenance.push(
            c.path
                .iter()
                .flat_map(|&u| g.provenance(u).iter().copied())
                .collect(),
        );
        edges.push((index[c.ends.0], s));
        edges.push((s, index[c.ends.1]));
    }
    let m = provenance.len();
    let mut adj = vec![Vec::new(); m];
    for (u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    CountedMultiGraph::from_parts(adj, provenance)
}

/// Follows degree-2 vertices starting with the step `from -> start` until
/// `stop` holds for the next vertex; returns the visited degree-2 vertices.
fn walk(
    g: &CountedMultiGraph,
    from: usize,
    start: usize,
    stop: impl Fn(usize) -> bool,
) -> Vec<usize> {
    let mut path = vec![start];
    let (mut prev, mut cur) = (from, start);
    loop {
        let nbrs = g.neighbors(cur);
        // with a parallel pair both entries equal prev; take the other slot
        let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
        if stop(next) {
            return path;
        }
        prev = cur;
        cur = next;
        path.push(cur);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CPrimeKind {
    K1Counted,
    ParallelPairEvenSum,
    K23OneOddCount,
    NotInCPrime,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CPrimeVerdict {
    pub kind: CPrimeKind,
    pub component: Vec<usize>,
}

/// Classifies a connected, preprocessed counted multigraph.
pub fn classify_c_prime(h: &CountedMultiGraph) -> Result<CPrimeVerdict> {
    if let Some(v) = (0..h.n()).find(|&v| h.degree(v) == 1) {
        return Err(Error::NotACore(v));
    }
    let component = (0..h.n()).collect();
    let kind = c_prime_kind(h);
    Ok(CPrimeVerdict { kind, component })
}

fn c_prime_kind(h: &CountedMultiGraph) -> CPrimeKind {
    match (h.n(), h.m()) {
        (1, 0) => CPrimeKind::K1Counted,
        (2, 2) if h.multiplicity(0, 1) == 2 => {
            if (h.count(0) + h.count(1)).is_multiple_of(2) {
                CPrimeKind::ParallelPairEvenSum
            } else {
                CPrimeKind::NotInCPrime
            }
        }
        (5, 6) if is_k23_shape(h) => {
            let heavy: Vec<usize> = (0..5).filter(|&v| h.count(v) > 1).collect();
            match heavy[..] {
                [] => CPrimeKind::K23OneOddCount,
                [u] if h.degree(u) == 2 && h.count(u) % 2 == 1 => CPrimeKind::K23OneOddCount,
                _ => CPrimeKind::NotInCPrime,
            }
        }
        _ => CPrimeKind::NotInCPrime,
    }
}

fn is_k23_shape(h: &CountedMultiGraph) -> bool {
    let hubs: Vec<usize> = (0..5).filter(|&v| h.degree(v) == 3).collect();
    let [a, b] = hubs[..] else { return false };
    (0..5)
        .filter(|&v| v != a && v != b)
        .all(|v| h.degree(v) == 2 && h.multiplicity(v, a) == 1 && h.multiplicity(v, b) == 1)
}

fn component_graphs(h: &CountedMultiGraph) -> Vec<(Vec<usize>, CountedMultiGraph)> {
    connected_components(h)
        .into_iter()
        .map(|comp| {
            let sub = h.induced(&comp);
            (comp, sub)
        })
        .collect()
}

/// Deletes every component that lies in C′.
pub fn strip_c_prime(h: &CountedMultiGraph) -> CountedMultiGraph {
    let mut keep = Vec::new();
    for (comp, sub) in component_graphs(h) {
        if c_prime_kind(&sub) == CPrimeKind::NotInCPrime {
            keep.extend(comp);
        }
    }
    keep.sort_unstable();
    h.induced(&keep)
}

/// 2-choosability through preprocessing and C′, component by component.
pub fn is_2_choosable_via_preprocessing(g: &Graph) -> bool {
    let h = preprocess(&CountedMultiGraph::from_graph(g));
    component_graphs(&h)
        .iter()
        .all(|(_, sub)| c_prime_kind(sub) != CPrimeKind::NotInCPrime)
}

/// Output of the greedy deletion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxDeletion {
    /// Deletion set in original vertex ids, ascending.
    pub set: Vec<usize>,
    /// Every selected cycle, as the provenance list of each of its vertices.
    pub cycles: Vec<Vec<Vec<usize>>>,
}

/// Greedy 2-choosable deletion: repeatedly delete a shortest cycle of the
/// preprocessed multigraph, re-preprocess and drop C′ components. A selected
/// contracted vertex is replaced by the first original vertex of its path.
pub fn approx_2_del(g: &Graph) -> Result<ApproxDeletion> {
    let mut h = strip_c_prime(&preprocess(&CountedMultiGraph::from_graph(g)));
    let mut cycles = Vec::new();
    while h.n() > 0 {
        let cycle = shortest_cycle(&h)
            .ok_or_else(|| Error::Internal("preprocessed graph outside C′ has no cycle".into()))?;
        cycles.push(
            cycle
                .iter()
                .map(|&v| h.provenance(v).to_vec())
                .collect::<Vec<_>>(),
        );
        h = strip_c_prime(&preprocess(&h.without(&cycle)));
    }
    let mut set: Vec<usize> = cycles.iter().flatten().map(|prov| prov[0]).collect();
    set.sort_unstable();
    set.dedup();
    let (rest, _) = g.without(&set);
    if !is_2_choosable(&rest).is_choosable() {
        return Err(Error::Internal(format!(
            "deletion set {set:?} leaves a non-2-choosable graph"
        )));
    }
    Ok(ApproxDeletion { set, cycles })
}
