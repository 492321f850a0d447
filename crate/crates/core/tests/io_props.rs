mod common;

use proptest::prelude::*;

use listcolor::generators::random_formula;
use listcolor::io::{parse_dimacs_cnf, parse_graph, write_dimacs_cnf, write_graph};
use listcolor::Error;

use common::arb_graph;

fn line_of(e: Error) -> usize {
    match e {
        Error::Parse { line, .. } => line,
        other => panic!("expected a parse error, got {other}"),
    }
}

#[test]
fn graph_errors_name_the_line() {
    let cases = [
        ("p edge 2 1\ne 1 1\n", 2),
        ("p edge 3 2\ne 1 2\ne 2 1\n", 3),
        ("c hi\np edge 2 1\ne 1 3\n", 3),
        ("e 1 2\n", 1),
        ("p edge 2 2\ne 1 2\n", 2),
        ("p edge 2 0\nx\n", 2),
        ("p edge 2 1\ne 1 2 3\n", 2),
        ("p edge 2 0\nc label 5 far\n", 2),
    ];
    for (text, line) in cases {
        assert_eq!(line_of(parse_graph(text).unwrap_err()), line, "{text:?}");
    }
}

#[test]
fn cnf_errors_name_the_line() {
    let cases = [
        ("p cnf 3 1\n1 2 0\n", 2),
        ("p cnf 3 1\n1 2 4 0\n", 2),
        ("p cnf 3 1\n1 1 2 0\n", 2),
        ("p cnf 3 2\n1 2 3 0\n", 2),
        ("p cnf 3 1\n1 2 3\n", 2),
        ("p cnf 3 1\nc rot 1 1 1 2\n1 2 3 0\n", 2),
    ];
    for (text, line) in cases {
        assert_eq!(
            line_of(parse_dimacs_cnf(text).unwrap_err()),
            line,
            "{text:?}"
        );
    }
}

#[test]
fn rotation_survives_round_trip() {
    let text = "p cnf 3 2\nc rot 2 3 1 2\n1 -2 3 0\n-1 2 -3 0\n";
    let phi = parse_dimacs_cnf(text).unwrap();
    assert_eq!(phi.rotation().unwrap()[1], [2, 0, 1]);
    assert_eq!(parse_dimacs_cnf(&write_dimacs_cnf(&phi)).unwrap(), phi);
}

proptest! {
    #[test]
    fn graph_round_trip(mut g in arb_graph(11), names in prop::collection::vec("[a-z][a-z0-9 ]{0,6}[a-z]", 11)) {
        let text = write_graph(&g);
        prop_assert_eq!(&parse_graph(&text).unwrap(), &g);
        if g.n() > 0 {
            g.set_labels(names[..g.n()].to_vec()).unwrap();
            let text = write_graph(&g);
            let back = parse_graph(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_graph(&back), text);
        }
    }

    #[test]
    fn cnf_round_trip(n in 3usize..9, k in 1usize..12, seed in any::<u64>()) {
        let phi = random_formula(n, k, seed);
        prop_assert_eq!(parse_dimacs_cnf(&write_dimacs_cnf(&phi)).unwrap(), phi);
    }
}
