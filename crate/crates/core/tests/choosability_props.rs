mod common;

use proptest::prelude::*;

use listcolor::choosability::{
    classify_core, compute_core, compute_core_with, is_2_choosable, is_k_choosable_exhaustive,
    is_l_colorable, CoreKind, ListAssignment, PeelOrder, TwoChoosability,
};
use listcolor::enumerate::all_graphs;
use listcolor::generators::{cycle, gnp, path, theta};
use listcolor::graph::connected_components;
use listcolor::{Budget, Graph};

use common::arb_graph;

fn oracle(g: &Graph) -> bool {
    is_k_choosable_exhaustive(g, 2, &mut Budget::unlimited())
        .unwrap()
        .is_choosable()
}

/// Vertices of the core lying in components with at least one edge.
fn nontrivial(g: &Graph, order: PeelOrder) -> Vec<usize> {
    let core = compute_core_with(g, order);
    let mut out: Vec<usize> = connected_components(&core.graph)
        .into_iter()
        .filter(|c| c.len() > 1)
        .flatten()
        .map(|v| core.kept[v])
        .collect();
    out.sort_unstable();
    out
}

#[test]
fn subgraphs_of_choosable_graphs_are_choosable() {
    for n in 1..=6 {
        for g in all_graphs(n) {
            if !is_2_choosable(&g).is_choosable() {
                continue;
            }
            for v in 0..n {
                assert!(
                    is_2_choosable(&g.without(&[v]).0).is_choosable(),
                    "{:?} - {v}",
                    g.edges()
                );
            }
        }
    }
}

#[test]
fn peel_order_does_not_change_the_core() {
    for seed in 0..100 {
        let n = 5 + (seed as usize * 7) % 26;
        let g = gnp(n, 2.2 / n as f64, seed);
        let q = nontrivial(&g, PeelOrder::Queue);
        assert_eq!(q, nontrivial(&g, PeelOrder::SmallestFirst), "seed {seed}");
        assert_eq!(q, nontrivial(&g, PeelOrder::LargestFirst), "seed {seed}");
        let comps = |o| connected_components(&compute_core_with(&g, o).graph).len();
        assert_eq!(comps(PeelOrder::Queue), comps(PeelOrder::SmallestFirst));
    }
}

#[test]
fn classification_round_trip() {
    for m in 1..=5 {
        let c = classify_core(&cycle(2 * m + 2)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].kind, CoreKind::EvenCycle { m });
        let t = classify_core(&theta(&[2, 2, 2 * m])).unwrap();
        assert_eq!(t[0].kind, CoreKind::Theta22Even { m });
        assert_eq!(
            classify_core(&cycle(2 * m + 1)).unwrap()[0].kind,
            CoreKind::OutsideC
        );
        assert_eq!(
            classify_core(&theta(&[2, 4, 2 * m + 2])).unwrap()[0].kind,
            CoreKind::OutsideC
        );
    }
    assert_eq!(classify_core(&Graph::new(1)).unwrap()[0].kind, CoreKind::K1);
    assert!(classify_core(&path(3)).is_err());
}

#[test]
fn disjoint_union_of_choosable_parts() {
    let g = cycle(4).disjoint_union(&path(3));
    assert!(oracle(&g));
    assert!(is_2_choosable(&g).is_choosable());
    let core = compute_core(&g);
    assert_eq!(core.graph.n(), 5);
}

#[test]
fn odd_cycle_has_a_bad_assignment() {
    let g = cycle(5);
    let lists = match is_k_choosable_exhaustive(&g, 2, &mut Budget::unlimited()).unwrap() {
        listcolor::choosability::ExhaustiveChoosability::NotChoosable(l) => l,
        other => panic!("{other:?}"),
    };
    assert!(lists.is_k_assignment(2));
    assert_eq!(is_l_colorable(&g, &lists).unwrap(), None);
    let uniform = ListAssignment::uniform(5, &[1, 2, 3]);
    assert!(is_l_colorable(&g, &uniform).unwrap().is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn negative_verdicts_carry_a_real_witness(g in arb_graph(8)) {
        if let TwoChoosability::NotChoosable { component } = is_2_choosable(&g) {
            let h = g.induced_subgraph(&component);
            prop_assert!(h.n() <= 7 || !is_2_choosable(&h).is_choosable());
            if h.n() <= 7 {
                prop_assert!(!oracle(&h));
            }
        }
    }

    #[test]
    fn core_has_no_leaves(g in arb_graph(11)) {
        let core = compute_core(&g);
        prop_assert!((0..core.graph.n()).all(|v| core.graph.degree(v) != 1));
        prop_assert_eq!(is_2_choosable(&g).is_choosable(), is_2_choosable(&core.graph).is_choosable());
    }

    #[test]
    fn colorings_respect_lists(g in arb_graph(8), raw in prop::collection::vec((0u32..4, 0u32..4), 8)) {
        let lists = ListAssignment::new(
            (0..g.n()).map(|v| vec![raw[v].0, raw[v].1]).collect(),
        ).unwrap();
        if let Some(c) = is_l_colorable(&g, &lists).unwrap() {
            for (list, color) in lists.0.iter().zip(&c) {
                prop_assert!(list.contains(color));
            }
            for (u, v) in g.edges() {
                prop_assert_ne!(c[u], c[v]);
            }
        }
    }
}
