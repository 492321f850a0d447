//! Gadget constructions for the hardness reductions and their checkers.
//!
//! Every builder returns a [`ReductionArtifact`]: the graph plus one role
//! record per vertex, so tests can address vertices by meaning rather than by
//! position.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

pub mod cnf;
pub mod constraint;
pub mod g_phi_p;
pub mod h_phi;
pub mod p_value;
pub mod triangle;

pub use cnf::{CnfFormula, Literal};
pub use constraint::{constraint_graph_p, verify_constraint_graph, ConstraintReport};
pub use g_phi_p::{
    build_clause_gadget_planar, build_edge_gadget, build_forbidden_gadget, build_g_phi_p,
    deletion_set_from_assignment, polarity_balanced, EdgeKind,
};
pub use h_phi::{build_h_phi, decomposition_from_assignment, h_phi_four_coloring};
pub use p_value::compute_p;
pub use triangle::triangle_reduction;

/// Which construction produced an artifact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArtifactKind {
    ConstraintGraph,
    HPhi,
    GPhiP,
    ForbiddenGadget,
    ClauseGadget,
    EdgeGadget,
    Triangle,
}

/// Side of an array cell in `H_φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    True,
    False,
}

/// Color class of an edge-gadget vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shade {
    Blue,
    Red,
    Plain,
}

/// Role of one vertex. Indices are 0-based; `var` is 1-based like
/// [`Literal::var`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    /// A vertex of the constraint graph, labelled `v1..v3`, `w1..w14`.
    Constraint {
        label: String,
    },
    /// Cell of a variable row of gadget `gadget` in `H_φ`.
    VariableCell {
        gadget: usize,
        row: usize,
        col: usize,
        side: Side,
    },
    /// Cell of a clause row of gadget `gadget` in `H_φ`.
    ClauseCell {
        gadget: usize,
        row: usize,
        col: usize,
        side: Side,
    },
    Dominating {
        gadget: usize,
        col: usize,
    },
    D0,
    /// Variable vertex `x_var` of `G_{φ,p}`.
    Variable {
        var: u32,
    },
    /// Hexagon node `c_{j,slot+1}` of clause gadget `clause`.
    ClauseNode {
        clause: usize,
        slot: usize,
    },
    /// Hexagon node `w_{j,slot+1}` of clause gadget `clause`.
    ClauseHub {
        clause: usize,
        slot: usize,
    },
    /// Inner vertex of edge gadget `edge`, named as in the gadget drawing.
    EdgeVertex {
        edge: usize,
        name: String,
        shade: Shade,
    },
    /// Root of a stand-alone forbidden gadget.
    GadgetRoot {
        gadget: usize,
    },
    GadgetCore {
        gadget: usize,
    },
    /// Vertex `position` (0..3) of petal `petal`, walking from the core.
    Petal {
        gadget: usize,
        petal: usize,
        position: usize,
    },
    /// Copy of an original vertex in the triangle reduction.
    Original {
        vertex: usize,
    },
    /// Apex added for edge `(u, v)`.
    EdgeApex {
        u: usize,
        v: usize,
    },
}

/// One forbidden gadget inside an artifact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenGadget {
    pub root: usize,
    pub core: usize,
    /// Each petal lists its three non-core vertices, walking from the core.
    pub petals: Vec<[usize; 3]>,
}

/// One edge gadget of `G_{φ,p}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeGadget {
    pub kind: EdgeKind,
    /// The clause-side endpoint `c_{jr}`.
    pub clause_end: usize,
    /// The variable-side endpoint `x_i`.
    pub variable_end: usize,
    pub var: u32,
    pub blue: Vec<usize>,
    pub red: Vec<usize>,
    /// Vertices owned by the gadget: everything except the two endpoints.
    pub own: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionArtifact {
    pub kind: ArtifactKind,
    pub graph: Graph,
    pub roles: Vec<Role>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub formula: Option<CnfFormula>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forbidden: Vec<ForbiddenGadget>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edge_gadgets: Vec<EdgeGadget>,
    /// For `H_φ`: per clause, the vertices playing `v1..v3, w1..w14`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub embedded_p: Vec<[usize; 17]>,
}

impl ReductionArtifact {
    pub(crate) fn new(kind: ArtifactKind, graph: Graph, roles: Vec<Role>) -> Self {
        debug_assert_eq!(graph.n(), roles.len());
        ReductionArtifact {
            kind,
            graph,
            roles,
            formula: None,
            p: None,
            forbidden: Vec::new(),
            edge_gadgets: Vec::new(),
            embedded_p: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Vertices whose role satisfies `f`, ascending.
    pub fn vertices_where(&self, f: impl Fn(&Role) -> bool) -> Vec<usize> {
        (0..self.n()).filter(|&v| f(&self.roles[v])).collect()
    }

    /// Role sidecar: one JSON object per vertex, in vertex order.
    pub fn roles_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.roles
                .iter()
                .enumerate()
                .map(|(v, r)| {
                    let mut obj = serde_json::to_value(r).expect("roles serialize");
                    obj["vertex"] = serde_json::json!(v + 1);
                    obj
                })
                .collect(),
        )
    }

    /// Re-checks the adjacencies the roles promise. Returns the first
    /// violation.
    pub fn validate_roles(&self) -> Result<(), String> {
        if self.roles.len() != self.n() {
            return Err(format!(
                "{} roles for {} vertices",
                self.roles.len(),
                self.n()
            ));
        }
        let g = &self.graph;
        for f in &self.forbidden {
            if !g.has_edge(f.root, f.core) {
                return Err(format!(
                    "gadget core {} not adjacent to root {}",
                    f.core, f.root
                ));
            }
            for p in &f.petals {
                let cycle = [f.core, p[0], p[1], p[2]];
                for i in 0..4 {
                    if !g.has_edge(cycle[i], cycle[(i + 1) % 4]) {
                        return Err(format!("petal {cycle:?} is not a 4-cycle"));
                    }
                }
            }
        }
        match self.kind {
            ArtifactKind::HPhi => h_phi::validate_roles(self),
            ArtifactKind::Triangle => triangle::validate_roles(self),
            _ => Ok(()),
        }
    }
}
