//! The 17-vertex constraint graph `P` and a checker for its three
//! properties.

use serde::{Deserialize, Serialize};

use super::{ArtifactKind, ReductionArtifact, Role};
use crate::budget::Budget;
use crate::choosability::{classify_core, compute_core, is_2_choosable, CoreKind};
use crate::exact::maximal_independent_sets;
use crate::graph::{is_bipartite, Bipartiteness, Graph};

/// Vertex names in id order.
pub const P_LABELS: [&str; 17] = [
    "v1", "v2", "v3", "w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8", "w9", "w10", "w11", "w12",
    "w13", "w14",
];

const P_EDGES: [(&str, &str); 31] = [
    ("w1", "w2"),
    ("w1", "w12"),
    ("w1", "w8"),
    ("w1", "w6"),
    ("w1", "v2"),
    ("w2", "v1"),
    ("w2", "w3"),
    ("w3", "w13"),
    ("w3", "v3"),
    ("w3", "w7"),
    ("w3", "w11"),
    ("v1", "w12"),
    ("v1", "w13"),
    ("v1", "w8"),
    ("v1", "w11"),
    ("v2", "w4"),
    ("v2", "w9"),
    ("v2", "w5"),
    ("v3", "w5"),
    ("v3", "w14"),
    ("v3", "w10"),
    ("w4", "w6"),
    ("w4", "w14"),
    ("w5", "w7"),
    ("w6", "w9"),
    ("w6", "w10"),
    ("w7", "w10"),
    ("w8", "w9"),
    ("w9", "w12"),
    ("w10", "w11"),
    ("w10", "w13"),
];

/// For each proper subset `I` of `{v1, v2, v3}`, an independent extension
/// whose complement is 2-choosable. Keyed by the bitmask of `I`
/// (bit `r` = `v_{r+1}`).
pub const EXTENSIONS: [(u8, &[&str]); 7] = [
    (0b000, &["w1", "w3", "w4", "w5", "w9", "w10"]),
    (0b001, &["v1", "w1", "w3", "w4", "w5", "w9", "w10"]),
    (0b010, &["v2", "w2", "w6", "w7", "w8", "w11", "w12", "w13"]),
    (0b100, &["v3", "w2", "w6", "w7", "w8", "w11", "w12", "w13"]),
    (0b011, &["v1", "v2", "w3", "w10", "w14"]),
    (0b101, &["v1", "v3", "w1", "w7", "w9"]),
    (0b110, &["v2", "v3", "w2", "w6", "w7", "w12", "w13"]),
];

/// The odd cycle named in the first property.
pub const ODD_CYCLE: [&str; 5] = ["v2", "w5", "v3", "w14", "w4"];

/// Independent set used by the 4-coloring of `H_φ`.
pub const S_SET: [&str; 5] = ["w1", "w3", "w4", "w9", "w10"];

/// Id of a label in [`P_LABELS`].
pub fn p_index(label: &str) -> usize {
    P_LABELS
        .iter()
        .position(|&l| l == label)
        .unwrap_or_else(|| panic!("no vertex {label}"))
}

pub fn p_edges() -> impl Iterator<Item = (usize, usize)> {
    P_EDGES.iter().map(|&(a, b)| (p_index(a), p_index(b)))
}

/// Extension of the subset `mask` of `{v1, v2, v3}`, as ids.
pub fn extension(mask: u8) -> Vec<usize> {
    let (_, labels) = EXTENSIONS
        .iter()
        .find(|(m, _)| *m == mask)
        .expect("proper subset");
    let mut out: Vec<usize> = labels.iter().map(|l| p_index(l)).collect();
    out.sort_unstable();
    out
}

pub fn constraint_graph_p() -> ReductionArtifact {
    let edges: Vec<_> = p_edges().collect();
    let mut g = Graph::from_edges(17, &edges).expect("fixed edge list is simple");
    g.set_labels(P_LABELS.iter().map(|s| s.to_string()).collect())
        .unwrap();
    let roles = P_LABELS
        .iter()
        .map(|l| Role::Constraint {
            label: l.to_string(),
        })
        .collect();
    ReductionArtifact::new(ArtifactKind::ConstraintGraph, g, roles)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintCheck {
    pub item: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintReport {
    pub items: Vec<ConstraintCheck>,
}

impl ConstraintReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    fn push(&mut self, item: &str, pass: bool, detail: String) {
        self.items.push(ConstraintCheck {
            item: item.to_string(),
            pass,
            detail,
        });
    }
}

fn names(g: &Graph, set: &[usize]) -> String {
    let l: Vec<&str> = set.iter().map(|&v| g.label(v).unwrap_or("?")).collect();
    format!("{{{}}}", l.join(","))
}

fn ids(g: &Graph, labels: &[&str]) -> Option<Vec<usize>> {
    labels
        .iter()
        .map(|l| (0..g.n()).find(|&v| g.label(v) == Some(l)))
        .collect()
}

/// Checks the three properties of `P` on a labelled graph: the odd cycle,
/// the unique bad maximal independent set over `U = {v1,v2,v3}`, and the
/// seven good extensions. Also checks the set `S` used for the 4-coloring.
pub fn verify_constraint_graph(art: &ReductionArtifact) -> ConstraintReport {
    let g = &art.graph;
    let mut report = ConstraintReport { items: Vec::new() };
    let Some(u) = ids(g, &["v1", "v2", "v3"]) else {
        report.push("labels", false, "missing v1, v2 or v3".into());
        return report;
    };

    report.push(
        "size",
        g.n() == 17 && g.m() == 31,
        format!("{} vertices, {} edges", g.n(), g.m()),
    );

    // (a)
    let cyc = ids(g, &ODD_CYCLE).unwrap_or_default();
    let closed = cyc.len() == 5 && (0..5).all(|i| g.has_edge(cyc[i], cyc[(i + 1) % 5]));
    let odd = matches!(is_bipartite(g), Bipartiteness::OddCycle(_));
    report.push(
        "a",
        closed && odd,
        format!("cycle <v2,w5,v3,w14,w4> present: {closed}; graph not bipartite: {odd}"),
    );

    // (b)
    let mis = maximal_independent_sets(g, &mut Budget::unlimited()).unwrap_or_default();
    let over_u: Vec<&Vec<usize>> = mis
        .iter()
        .filter(|s| u.iter().all(|x| s.contains(x)))
        .collect();
    let expected = {
        let mut e = ids(g, &["v1", "v2", "v3", "w6", "w7"]).unwrap_or_default();
        e.sort_unstable();
        e
    };
    let (unique, core_bad) = match over_u[..] {
        [s] if *s == expected => {
            let (rest, _) = g.without(s);
            let core = compute_core(&rest);
            let bad = classify_core(&core.graph)
                .map(|cls| cls.iter().any(|c| c.kind == CoreKind::OutsideC))
                .unwrap_or(false);
            (true, bad)
        }
        _ => (false, false),
    };
    report.push(
        "b",
        unique && core_bad,
        format!(
            "{} maximal independent sets in total, {} contain U: {}; core of the complement outside C: {core_bad}",
            mis.len(),
            over_u.len(),
            over_u.iter().map(|s| names(g, s)).collect::<Vec<_>>().join(" "),
        ),
    );

    // (c)
    let mut failures = Vec::new();
    for (mask, labels) in EXTENSIONS {
        let Some(set) = ids(g, labels) else {
            failures.push(format!("mask {mask:03b}: missing labels"));
            continue;
        };
        let base: Vec<usize> = (0..3)
            .filter(|r| mask >> r & 1 == 1)
            .map(|r| u[r])
            .collect();
        let extends = base.iter().all(|v| set.contains(v))
            && u.iter().filter(|v| set.contains(v)).count() == base.len();
        let independent = g.is_independent(&set);
        let (rest, _) = g.without(&set);
        let good = is_2_choosable(&rest).is_choosable();
        if !(extends && independent && good) {
            failures.push(format!(
                "{}: extends={extends} independent={independent} complement 2-choosable={good}",
                names(g, &set)
            ));
        }
    }
    report.push(
        "c",
        failures.is_empty(),
        if failures.is_empty() {
            "all 7 extensions independent with 2-choosable complement".into()
        } else {
            failures.join("; ")
        },
    );

    // the set S
    let s = ids(g, &S_SET).unwrap_or_default();
    let one_each = s
        .iter()
        .all(|&w| u.iter().filter(|&&x| g.has_edge(w, x)).count() == 1);
    report.push(
        "S",
        s.len() == 5 && g.is_independent(&s) && one_each,
        format!(
            "S = {} independent with one U-neighbor each: {one_each}",
            names(g, &s)
        ),
    );
    report
}
