//! Vertex cover to 2-choosable deletion: every edge gets an apex.

use super::{ArtifactKind, ReductionArtifact, Role};
use crate::graph::Graph;

/// `g` plus, for each edge `uv`, a new vertex adjacent to `u` and `v`.
/// Vertices keep their ids; apexes follow in edge order.
pub fn triangle_reduction(g: &Graph) -> ReductionArtifact {
    let mut h = Graph::new(g.n());
    let mut roles: Vec<Role> = (0..g.n()).map(|vertex| Role::Original { vertex }).collect();
    for (u, v) in g.edges() {
        h.add_edge(u, v).expect("edges of a simple graph");
    }
    for (u, v) in g.edges() {
        let apex = h.add_vertex();
        h.add_edge(u, apex).unwrap();
        h.add_edge(v, apex).unwrap();
        roles.push(Role::EdgeApex { u, v });
    }
    ReductionArtifact::new(ArtifactKind::Triangle, h, roles)
}

pub(crate) fn validate_roles(art: &ReductionArtifact) -> Result<(), String> {
    for (x, r) in art.roles.iter().enumerate() {
        if let Role::EdgeApex { u, v } = *r {
            let g = &art.graph;
            if g.degree(x) != 2 || !g.has_edge(x, u) || !g.has_edge(x, v) || !g.has_edge(u, v) {
                return Err(format!("apex {x} does not close a triangle on {u}-{v}"));
            }
        }
    }
    Ok(())
}
