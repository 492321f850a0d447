use proptest::prelude::*;

use listcolor::choosability::is_2_choosable;
use listcolor::enumerate::all_graphs;
use listcolor::exact::{min_2_del_exact, min_vertex_cover_exact};
use listcolor::generators::random_formula;
use listcolor::graph::is_bipartite;
use listcolor::reductions::g_phi_p::{build_edge_gadget, EdgeKind};
use listcolor::reductions::h_phi::{Layout, COLUMNS};
use listcolor::reductions::{
    build_g_phi_p, build_h_phi, constraint_graph_p, decomposition_from_assignment,
    deletion_set_from_assignment, polarity_balanced, triangle_reduction, CnfFormula, Literal, Side,
};
use listcolor::{Budget, Error};

#[test]
fn rows_are_crowns() {
    let phi = random_formula(5, 2, 7);
    let art = build_h_phi(&phi).unwrap();
    let layout = Layout { n: 5, k: 2 };
    let g = &art.graph;
    for row in 0..layout.rows() {
        let cells = |side| {
            (0..layout.k)
                .flat_map(move |s| (0..COLUMNS).map(move |c| (s, c, layout.cell(s, row, c, side))))
                .collect::<Vec<_>>()
        };
        let (t, f) = (cells(Side::True), cells(Side::False));
        for &(s, c, u) in &t {
            for &(s2, c2, v) in &f {
                assert_eq!(g.has_edge(u, v), (s, c) != (s2, c2), "row {row}");
            }
        }
        for side in [&t, &f] {
            for &(_, _, u) in side {
                assert!(side.iter().all(|&(_, _, v)| !g.has_edge(u, v)));
            }
        }
    }
}

#[test]
fn embedded_copies_are_induced_p() {
    let p = constraint_graph_p().graph;
    for seed in 0..4 {
        let phi = random_formula(4, 3, seed);
        let art = build_h_phi(&phi).unwrap();
        assert_eq!(art.embedded_p.len(), 3);
        for ids in &art.embedded_p {
            let h = art.graph.induced_subgraph(ids);
            assert_eq!(h.edges(), p.edges());
        }
    }
}

#[test]
fn satisfying_assignments_give_solutions() {
    for seed in 0..6 {
        let phi = random_formula(4, 2, seed);
        let h = build_h_phi(&phi).unwrap();
        let g = build_g_phi_p(&phi, 1).unwrap();
        h.validate_roles().unwrap();
        g.validate_roles().unwrap();
        for tau in phi.satisfying_assignments() {
            let d = decomposition_from_assignment(&h, &tau).unwrap();
            d.validate(&h.graph).unwrap();
            let a = deletion_set_from_assignment(&g, &tau).unwrap();
            assert!(a.len() <= 42 * phi.num_clauses());
        }
        let bad = (0u32..16)
            .map(|m| (0..4).map(|i| m >> (3 - i) & 1 == 1).collect::<Vec<_>>())
            .find(|t| phi.first_unsatisfied(t).is_some());
        if let Some(t) = bad {
            assert!(matches!(
                decomposition_from_assignment(&h, &t),
                Err(Error::Unsatisfied(_))
            ));
            assert!(matches!(
                deletion_set_from_assignment(&g, &t),
                Err(Error::Unsatisfied(_))
            ));
        }
    }
}

#[test]
fn edge_gadget_colour_classes() {
    for kind in [EdgeKind::Positive, EdgeKind::Negative] {
        for p in 1..=2 {
            let art = build_edge_gadget(kind, p).unwrap();
            let e = &art.edge_gadgets[0];
            let cores: Vec<usize> = art.forbidden.iter().map(|f| f.core).collect();
            for side in [&e.blue, &e.red] {
                let mut a = cores.clone();
                a.extend(side);
                assert!(art.graph.is_independent(&a), "{kind:?} {side:?}");
                assert!(
                    is_2_choosable(&art.graph.without(&a).0).is_choosable(),
                    "{kind:?} {side:?}"
                );
            }
        }
    }
}

#[test]
fn triangle_reduction_preserves_optimum() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            let t = triangle_reduction(&g);
            assert_eq!((t.n(), t.graph.m()), (n + g.m(), 3 * g.m()));
            t.validate_roles().unwrap();
            let vc = min_vertex_cover_exact(&g, &mut Budget::unlimited())
                .unwrap()
                .size;
            let del = min_2_del_exact(&t.graph, &mut Budget::unlimited())
                .unwrap()
                .size;
            assert_eq!(vc, del, "{:?}", g.edges());
        }
    }
}

fn formula(n: usize, clauses: &[[i64; 3]]) -> CnfFormula {
    let c = clauses
        .iter()
        .map(|c| c.map(|x| Literal::from_dimacs(x).unwrap()))
        .collect();
    CnfFormula::new(n, c).unwrap()
}

#[test]
fn odd_negative_cycle_breaks_bipartiteness() {
    // x3 -C1- x1 -C3- x3 carries one negative occurrence
    let phi = formula(4, &[[-3, 1, 2], [-2, 3, 4], [3, 1, -4]]);
    assert!(!polarity_balanced(&phi));
    let art = build_g_phi_p(&phi, 1).unwrap();
    assert!(!is_bipartite(&art.graph).is_bipartite());
    for tau in phi.satisfying_assignments() {
        assert!(deletion_set_from_assignment(&art, &tau).unwrap().len() <= 42 * 3);
    }
    let flipped = formula(3, &[[1, -2, 3], [-1, 2, -3]]);
    assert!(polarity_balanced(&flipped));
    assert!(is_bipartite(&build_g_phi_p(&flipped, 1).unwrap().graph).is_bipartite());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn g_phi_p_sizes_and_roles(n in 3usize..6, k in 1usize..4, seed in any::<u64>(), p in 1u64..3) {
        let phi = random_formula(n, k, seed);
        let art = build_g_phi_p(&phi, p).unwrap();
        prop_assert!(art.validate_roles().is_ok());
        prop_assert_eq!(art.roles.len(), art.graph.n());
        prop_assert_eq!(art.edge_gadgets.len(), 3 * k);
        prop_assert_eq!(is_bipartite(&art.graph).is_bipartite(), polarity_balanced(&phi));
    }
}
