//! The graph `G_{φ,p}`: every variable becomes a vertex, every clause a
//! hexagon with a chord, and every literal occurrence a positive or negative
//! edge gadget. All three gadget kinds hang forbidden gadgets (a root-core
//! edge plus `p+1` four-cycles through the core) off their black vertices.
//!
//! Every gadget is bipartite, but the whole graph is bipartite only when
//! [`polarity_balanced`] holds: a positive gadget puts `c` and `x` on the
//! same side, a negative one on opposite sides, and the three `c` vertices
//! of a hexagon share a side.

use serde::{Deserialize, Serialize};

use super::cnf::CnfFormula;
use super::{ArtifactKind, EdgeGadget, ForbiddenGadget, ReductionArtifact, Role, Shade};
use crate::choosability::is_2_choosable_induced;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Positive,
    Negative,
}

/// Positive gadget: inner vertex names, with `c` and `x` the endpoints.
const POSITIVE_INNER: [&str; 13] = [
    "a1", "a2", "b1", "b2", "R1", "k1", "k2", "k3", "B1", "R2", "l1", "l2", "k4",
];
const POSITIVE_EDGES: [(&str, &str); 21] = [
    ("c", "a1"),
    ("a1", "a2"),
    ("a2", "R1"),
    ("R1", "b2"),
    ("b2", "b1"),
    ("b1", "c"),
    ("R1", "k1"),
    ("k1", "k2"),
    ("k2", "B1"),
    ("B1", "R2"),
    ("R2", "l1"),
    ("R2", "k3"),
    ("k3", "k4"),
    ("k4", "x"),
    ("x", "R2"),
    ("B1", "R1"),
    ("R1", "c"),
    ("l1", "l2"),
    ("l2", "B1"),
    ("k2", "k3"),
    ("l1", "R1"),
];
const POSITIVE_BLACK: [&str; 10] = ["a1", "a2", "b1", "b2", "k1", "k2", "k3", "l1", "l2", "k4"];
const POSITIVE_BLUE: [&str; 3] = ["c", "B1", "x"];
const POSITIVE_RED: [&str; 2] = ["R1", "R2"];

/// Negative gadget: the 6-cycle `c m1 m2 x m3 m4` plus the chord `c x`.
const NEGATIVE_INNER: [&str; 4] = ["m1", "m2", "m3", "m4"];
const NEGATIVE_EDGES: [(&str, &str); 7] = [
    ("c", "m1"),
    ("m1", "m2"),
    ("m2", "x"),
    ("x", "m3"),
    ("m3", "m4"),
    ("m4", "c"),
    ("c", "x"),
];
const NEGATIVE_BLACK: [&str; 4] = ["m1", "m2", "m3", "m4"];

struct Shape {
    inner: &'static [&'static str],
    edges: &'static [(&'static str, &'static str)],
    black: &'static [&'static str],
    blue: &'static [&'static str],
    red: &'static [&'static str],
}

fn shape(kind: EdgeKind) -> Shape {
    match kind {
        EdgeKind::Positive => Shape {
            inner: &POSITIVE_INNER,
            edges: &POSITIVE_EDGES,
            black: &POSITIVE_BLACK,
            blue: &POSITIVE_BLUE,
            red: &POSITIVE_RED,
        },
        EdgeKind::Negative => Shape {
            inner: &NEGATIVE_INNER,
            edges: &NEGATIVE_EDGES,
            black: &NEGATIVE_BLACK,
            blue: &["c"],
            red: &["x"],
        },
    }
}

fn check_p(p: u64) -> Result<usize> {
    if p < 1 {
        return Err(Error::InvalidArgument("p must be at least 1".into()));
    }
    usize::try_from(p).map_err(|_| Error::InvalidArgument(format!("p = {p} too large")))
}

/// Incremental graph with roles.
#[derive(Default)]
struct Builder {
    edges: Vec<(usize, usize)>,
    roles: Vec<Role>,
    forbidden: Vec<ForbiddenGadget>,
    edge_gadgets: Vec<EdgeGadget>,
}

impl Builder {
    fn vertex(&mut self, role: Role) -> usize {
        self.roles.push(role);
        self.roles.len() - 1
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    /// Hangs a forbidden gadget with `p + 1` petals off `root`.
    fn forbidden(&mut self, root: usize, p: usize) {
        let gadget = self.forbidden.len();
        let core = self.vertex(Role::GadgetCore { gadget });
        self.edge(root, core);
        let mut petals = Vec::with_capacity(p + 1);
        for petal in 0..=p {
            let q: [usize; 3] = std::array::from_fn(|position| {
                self.vertex(Role::Petal {
                    gadget,
                    petal,
                    position,
                })
            });
            self.edge(core, q[0]);
            self.edge(q[0], q[1]);
            self.edge(q[1], q[2]);
            self.edge(q[2], core);
            petals.push(q);
        }
        self.forbidden.push(ForbiddenGadget { root, core, petals });
    }

    /// Hexagon `w1 c2 w2 c1 w3 c3` with the chord `w1 c1`; returns the
    /// `c` vertices by slot.
    fn clause(&mut self, clause: usize, p: usize) -> [usize; 3] {
        let w: [usize; 3] =
            std::array::from_fn(|slot| self.vertex(Role::ClauseHub { clause, slot }));
        let c: [usize; 3] =
            std::array::from_fn(|slot| self.vertex(Role::ClauseNode { clause, slot }));
        let ring = [w[0], c[1], w[1], c[0], w[2], c[2]];
        for i in 0..6 {
            self.edge(ring[i], ring[(i + 1) % 6]);
        }
        self.edge(w[0], c[0]);
        for hub in w {
            self.forbidden(hub, p);
        }
        c
    }

    fn edge_gadget(&mut self, kind: EdgeKind, p: usize, c: usize, x: usize, var: u32) {
        let edge = self.edge_gadgets.len();
        let first = self.roles.len();
        let Shape {
            inner,
            edges,
            black,
            blue,
            red,
        } = shape(kind);
        let mut ids = std::collections::HashMap::from([("c", c), ("x", x)]);
        for &name in inner {
            let shade = if blue.contains(&name) {
                Shade::Blue
            } else if red.contains(&name) {
                Shade::Red
            } else {
                Shade::Plain
            };
            let v = self.vertex(Role::EdgeVertex {
                edge,
                name: name.to_string(),
                shade,
            });
            ids.insert(name, v);
        }
        for &(a, b) in edges {
            self.edge(ids[a], ids[b]);
        }
        for &name in black {
            self.forbidden(ids[name], p);
        }
        let own = (first..self.roles.len()).collect();
        self.edge_gadgets.push(EdgeGadget {
            kind,
            clause_end: c,
            variable_end: x,
            var,
            blue: blue.iter().map(|n| ids[n]).collect(),
            red: red.iter().map(|n| ids[n]).collect(),
            own,
        });
    }

    fn finish(self, kind: ArtifactKind) -> Result<ReductionArtifact> {
        let graph = Graph::from_edges(self.roles.len(), &self.edges)?;
        let mut art = ReductionArtifact::new(kind, graph, self.roles);
        art.forbidden = self.forbidden;
        art.edge_gadgets = self.edge_gadgets;
        Ok(art)
    }
}

/// A forbidden gadget on a fresh root: `3p + 5` vertices.
pub fn build_forbidden_gadget(p: u64) -> Result<ReductionArtifact> {
    let pu = check_p(p)?;
    let mut b = Builder::default();
    let root = b.vertex(Role::GadgetRoot { gadget: 0 });
    b.forbidden(root, pu);
    let mut art = b.finish(ArtifactKind::ForbiddenGadget)?;
    art.p = Some(p);
    Ok(art)
}

/// The clause gadget: `9p + 18` vertices.
pub fn build_clause_gadget_planar(p: u64) -> Result<ReductionArtifact> {
    let pu = check_p(p)?;
    let mut b = Builder::default();
    b.clause(0, pu);
    let mut art = b.finish(ArtifactKind::ClauseGadget)?;
    art.p = Some(p);
    Ok(art)
}

/// One edge gadget together with its two endpoints (vertex 0 is `c`,
/// vertex 1 is `x`).
pub fn build_edge_gadget(kind: EdgeKind, p: u64) -> Result<ReductionArtifact> {
    let pu = check_p(p)?;
    let mut b = Builder::default();
    let c = b.vertex(Role::ClauseNode { clause: 0, slot: 0 });
    let x = b.vertex(Role::Variable { var: 1 });
    b.edge_gadget(kind, pu, c, x, 1);
    let mut art = b.finish(ArtifactKind::EdgeGadget)?;
    art.p = Some(p);
    Ok(art)
}

/// Vertices `0..n` are the variables; then, per clause, its hexagon
/// gadget followed by its three edge gadgets in rotation order.
pub fn build_g_phi_p(phi: &CnfFormula, p: u64) -> Result<ReductionArtifact> {
    let pu = check_p(p)?;
    let mut b = Builder::default();
    let xs: Vec<usize> = (1..=phi.num_vars() as u32)
        .map(|var| b.vertex(Role::Variable { var }))
        .collect();
    for j in 0..phi.num_clauses() {
        let c = b.clause(j, pu);
        for (slot, lit) in phi.rotated(j).into_iter().enumerate() {
            let kind = if lit.positive {
                EdgeKind::Positive
            } else {
                EdgeKind::Negative
            };
            b.edge_gadget(kind, pu, c[slot], xs[lit.var as usize - 1], lit.var);
        }
    }
    let mut art = b.finish(ArtifactKind::GPhiP)?;
    art.formula = Some(phi.clone());
    art.p = Some(p);
    Ok(art)
}

/// Whether every cycle of the variable-clause incidence graph of `phi` has
/// an even number of negative occurrences, i.e. whether `G_{φ,p}` is
/// bipartite.
pub fn polarity_balanced(phi: &CnfFormula) -> bool {
    let n = phi.num_vars();
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n + phi.num_clauses()];
    for (j, clause) in phi.clauses().iter().enumerate() {
        for l in clause {
            let x = l.var as usize - 1;
            adj[x].push((n + j, !l.positive));
            adj[n + j].push((x, !l.positive));
        }
    }
    let mut side: Vec<Option<bool>> = vec![None; adj.len()];
    for s in 0..adj.len() {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for &(v, flip) in &adj[u] {
                match side[v] {
                    None => {
                        side[v] = Some(su ^ flip);
                        stack.push(v);
                    }
                    Some(sv) if sv != su ^ flip => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// The independent deletion set a satisfying assignment induces: all
/// gadget cores, plus per edge gadget the side that contains `x` exactly
/// when `x` is true. Checks independence, the 2-choosable remainder and the
/// `42k` bound.
pub fn deletion_set_from_assignment(art: &ReductionArtifact, tau: &[bool]) -> Result<Vec<usize>> {
    let phi = art
        .formula
        .as_ref()
        .filter(|_| art.kind == ArtifactKind::GPhiP)
        .ok_or_else(|| Error::InvalidArgument("artifact is not a G_phi_p graph".into()))?;
    phi.check_assignment(tau)?;
    let mut a: Vec<usize> = art.forbidden.iter().map(|f| f.core).collect();
    for e in &art.edge_gadgets {
        let value = tau[e.var as usize - 1];
        let x_side = match e.kind {
            EdgeKind::Positive => &e.blue,
            EdgeKind::Negative => &e.red,
        };
        let other = if x_side == &e.blue { &e.red } else { &e.blue };
        a.extend(if value { x_side } else { other });
    }
    a.sort_unstable();
    a.dedup();
    let g = &art.graph;
    if !g.is_independent(&a) {
        return Err(Error::Internal("deletion set is not independent".into()));
    }
    let mut keep = vec![true; g.n()];
    for &v in &a {
        keep[v] = false;
    }
    if !is_2_choosable_induced(g, &keep) {
        return Err(Error::Internal("remainder is not 2-choosable".into()));
    }
    let bound = 42 * phi.num_clauses();
    if a.len() > bound {
        return Err(Error::Internal(format!(
            "deletion set has {} > {bound} vertices",
            a.len()
        )));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::choosability::is_2_choosable;
    use crate::graph::is_bipartite;
    use crate::reductions::cnf::Literal;

    #[test]
    fn gadget_sizes() {
        for p in 1..=3u64 {
            assert_eq!(build_forbidden_gadget(p).unwrap().n() as u64, 3 * p + 5);
            assert_eq!(
                build_clause_gadget_planar(p).unwrap().n() as u64,
                9 * p + 18
            );
            assert_eq!(
                build_edge_gadget(EdgeKind::Positive, p).unwrap().n() as u64,
                30 * p + 55
            );
            assert_eq!(
                build_edge_gadget(EdgeKind::Negative, p).unwrap().n() as u64,
                12 * p + 22
            );
        }
        assert!(build_forbidden_gadget(0).is_err());
    }

    #[test]
    fn gadgets_are_bipartite_and_bad() {
        for art in [
            build_forbidden_gadget(1).unwrap(),
            build_clause_gadget_planar(1).unwrap(),
            build_edge_gadget(EdgeKind::Positive, 1).unwrap(),
            build_edge_gadget(EdgeKind::Negative, 1).unwrap(),
        ] {
            assert!(is_bipartite(&art.graph).is_bipartite());
            assert!(!is_2_choosable(&art.graph).is_choosable());
            art.validate_roles().unwrap();
        }
    }

    #[test]
    fn one_clause_formula() {
        let lits = [1, 2, 3].map(|v| Literal::new(v, true));
        let phi = CnfFormula::new(3, vec![lits]).unwrap();
        let art = build_g_phi_p(&phi, 1).unwrap();
        assert_eq!(art.n(), 279);
        assert!(is_bipartite(&art.graph).is_bipartite());
        for tau in phi.satisfying_assignments() {
            let a = deletion_set_from_assignment(&art, &tau).unwrap();
            assert!(a.len() <= 42);
        }
        assert_eq!(
            deletion_set_from_assignment(&art, &[false, false, false]),
            Err(Error::Unsatisfied(1))
        );
    }
}
