//! Standard graph families plus seeded random graphs and formulas.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::reductions::cnf::{CnfFormula, Literal};

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path edges are simple")
}

/// `C_n`; needs `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "C_{n} is not a simple graph");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle edges are simple")
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// `K_{a,b}`: vertices `0..a` on one side, `a..a+b` on the other.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

/// Two hubs (vertices 0 and 1) joined by internally disjoint paths of the
/// given lengths. At most one length may be 1.
pub fn theta(lengths: &[usize]) -> Graph {
    assert!(lengths.iter().all(|&l| l >= 1));
    assert!(
        lengths.iter().filter(|&&l| l == 1).count() <= 1,
        "parallel hub edges"
    );
    let mut g = Graph::new(2);
    for &len in lengths {
        let mut prev = 0;
        for _ in 1..len {
            let v = g.add_vertex();
            g.add_edge(prev, v).unwrap();
            prev = v;
        }
        g.add_edge(prev, 1).unwrap();
    }
    g
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// Erdős–Rényi `G(n, p)` from a ChaCha stream, so a seed pins the graph on
/// every platform.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    gnp_with(n, p, &mut rng)
}

pub fn gnp_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Random 3-CNF with `k` clauses over `n >= 3` variables; every clause uses
/// three distinct variables with random signs.
pub fn random_formula(n: usize, k: usize, seed: u64) -> CnfFormula {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<u32> = (1..=n as u32).collect();
    let clauses = (0..k)
        .map(|_| {
            let pick: Vec<u32> = vars.choose_multiple(&mut rng, 3).copied().collect();
            [0, 1, 2].map(|i| Literal::new(pick[i], rng.gen_bool(0.5)))
        })
        .collect();
    CnfFormula::new(n, clauses).expect("distinct variables make a valid clause")
}
