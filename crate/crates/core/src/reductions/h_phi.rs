//! The graph `H_φ`: one clause gadget per clause, each an array of
//! `n + 14k` rows of 17 true/false mate pairs plus a dominating row, with a
//! copy of the constraint graph planted in it, and an apex `d0` over all
//! dominating vertices.
//!
//! Rows are global: row `i` of every gadget together induces
//! `K_{17k,17k}` minus the mate matching. Rows `0..n` belong to the
//! variables; rows `n + 14t .. n + 14t + 14` form the block of clause `t`.

use serde::{Deserialize, Serialize};

use super::cnf::CnfFormula;
use super::constraint::{extension, p_edges, p_index, S_SET};
use super::{ArtifactKind, ReductionArtifact, Role, Side};
use crate::error::{Error, Result};
use crate::exact::Decomposition;
use crate::graph::{Coloring, Graph};

pub const COLUMNS: usize = 17;

/// Vertex numbering of `H_φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
    pub k: usize,
}

impl Layout {
    pub fn rows(&self) -> usize {
        self.n + 14 * self.k
    }

    fn gadget_size(&self) -> usize {
        self.rows() * 2 * COLUMNS + COLUMNS
    }

    pub fn vertex_count(&self) -> usize {
        self.k * self.gadget_size() + 1
    }

    pub fn cell(&self, gadget: usize, row: usize, col: usize, side: Side) -> usize {
        gadget * self.gadget_size() + row * 2 * COLUMNS + col * 2 + (side == Side::False) as usize
    }

    pub fn dominating(&self, gadget: usize, col: usize) -> usize {
        gadget * self.gadget_size() + self.rows() * 2 * COLUMNS + col
    }

    pub fn d0(&self) -> usize {
        self.k * self.gadget_size()
    }

    /// Row holding `w_{t+1}` of clause `clause`.
    pub fn clause_row(&self, clause: usize, t: usize) -> usize {
        self.n + 14 * clause + t
    }

    fn of(art: &ReductionArtifact) -> Result<Layout> {
        let phi = art
            .formula
            .as_ref()
            .filter(|_| art.kind == ArtifactKind::HPhi)
            .ok_or_else(|| Error::InvalidArgument("artifact is not an H_phi graph".into()))?;
        Ok(Layout {
            n: phi.num_vars(),
            k: phi.num_clauses(),
        })
    }
}

/// The vertices of clause `s` playing `v1..v3, w1..w14`.
fn embedded(layout: &Layout, phi: &CnfFormula, s: usize) -> [usize; 17] {
    let clause = phi.clauses()[s];
    std::array::from_fn(|id| {
        if id < 3 {
            let l = clause[id];
            let side = if l.positive { Side::True } else { Side::False };
            layout.cell(s, l.var as usize - 1, id, side)
        } else {
            let t = id - 3;
            layout.cell(s, layout.clause_row(s, t), t + 3, Side::True)
        }
    })
}

pub fn build_h_phi(phi: &CnfFormula) -> Result<ReductionArtifact> {
    if phi.num_clauses() == 0 {
        return Err(Error::Formula("formula has no clauses".into()));
    }
    let layout = Layout {
        n: phi.num_vars(),
        k: phi.num_clauses(),
    };
    let (rows, k) = (layout.rows(), layout.k);
    let mut roles = Vec::with_capacity(layout.vertex_count());
    for s in 0..k {
        for row in 0..rows {
            for col in 0..COLUMNS {
                for side in [Side::True, Side::False] {
                    roles.push(if row < layout.n {
                        Role::VariableCell {
                            gadget: s,
                            row,
                            col,
                            side,
                        }
                    } else {
                        Role::ClauseCell {
                            gadget: s,
                            row,
                            col,
                            side,
                        }
                    });
                }
            }
        }
        for col in 0..COLUMNS {
            roles.push(Role::Dominating { gadget: s, col });
        }
    }
    roles.push(Role::D0);

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); layout.vertex_count()];
    let mut edge = |u: usize, v: usize| {
        adj[u].push(v);
        adj[v].push(u);
    };
    for row in 0..rows {
        for s in 0..k {
            for c in 0..COLUMNS {
                let t = layout.cell(s, row, c, Side::True);
                for s2 in 0..k {
                    for c2 in 0..COLUMNS {
                        if s2 != s || c2 != c {
                            edge(t, layout.cell(s2, row, c2, Side::False));
                        }
                    }
                }
            }
        }
    }
    for s in 0..k {
        for c in 0..COLUMNS {
            let d = layout.dominating(s, c);
            for row in 0..rows {
                edge(d, layout.cell(s, row, c, Side::True));
                edge(d, layout.cell(s, row, c, Side::False));
            }
            edge(d, layout.d0());
        }
    }
    let mut planted = Vec::with_capacity(k);
    for s in 0..k {
        let ids = embedded(&layout, phi, s);
        for (a, b) in p_edges() {
            edge(ids[a], ids[b]);
        }
        planted.push(ids);
    }
    let mut edges = Vec::new();
    for (u, l) in adj.iter_mut().enumerate() {
        l.sort_unstable();
        l.dedup();
        edges.extend(l.iter().filter(|&&v| v > u).map(|&v| (u, v)));
    }
    let graph = Graph::from_edges(layout.vertex_count(), &edges)?;
    let mut art = ReductionArtifact::new(ArtifactKind::HPhi, graph, roles);
    art.formula = Some(phi.clone());
    art.embedded_p = planted;
    Ok(art)
}

pub(crate) fn validate_roles(art: &ReductionArtifact) -> std::result::Result<(), String> {
    let layout = Layout::of(art).map_err(|e| e.to_string())?;
    let g = &art.graph;
    if g.n() != layout.vertex_count() {
        return Err(format!(
            "{} vertices, layout expects {}",
            g.n(),
            layout.vertex_count()
        ));
    }
    for (v, role) in art.roles.iter().enumerate() {
        let (gadget, row, col, side) = match *role {
            Role::VariableCell {
                gadget,
                row,
                col,
                side,
            } => (gadget, row, col, side),
            Role::ClauseCell {
                gadget,
                row,
                col,
                side,
            } => (gadget, row, col, side),
            Role::Dominating { gadget, col } => {
                if v != layout.dominating(gadget, col) || !g.has_edge(v, layout.d0()) {
                    return Err(format!("dominating vertex {v} misplaced"));
                }
                continue;
            }
            Role::D0 => {
                if g.degree(v) != COLUMNS * layout.k {
                    return Err("d0 is not adjacent to exactly the dominating row".into());
                }
                continue;
            }
            _ => return Err(format!("unexpected role at {v}")),
        };
        if v != layout.cell(gadget, row, col, side) {
            return Err(format!(
                "vertex {v} has role of {}",
                layout.cell(gadget, row, col, side)
            ));
        }
        if !g.has_edge(v, layout.dominating(gadget, col)) {
            return Err(format!("vertex {v} not adjacent to its dominating vertex"));
        }
        let mate = layout.cell(
            gadget,
            row,
            col,
            if side == Side::True {
                Side::False
            } else {
                Side::True
            },
        );
        if g.has_edge(v, mate) {
            return Err(format!("mates {v} and {mate} adjacent"));
        }
    }
    Ok(())
}

/// Which rule produced a 4-coloring of `H_φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColoringSource {
    /// The fixed per-row rule: variable rows (1,2); clause rows of `S`
    /// vertices opposite to their variable neighbor; other clause rows (3,2).
    ProofRule,
    /// Backtracking over row color pairs, seeded with the rule.
    RowSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourColoring {
    pub coloring: Coloring,
    pub source: ColoringSource,
    /// `(true-side color, false-side color)` per row.
    pub rows: Vec<(u32, u32)>,
}

/// Finds a proper 4-coloring that is uniform on each row side, with the
/// dominating row colored 4 and `d0` colored 1.
pub fn h_phi_four_coloring(art: &ReductionArtifact) -> Result<FourColoring> {
    let layout = Layout::of(art)?;
    let rule = proof_rule_rows(art, &layout);
    let (rows, source) = if coloring_from_rows(art, &rule).is_proper(&art.graph) {
        (rule, ColoringSource::ProofRule)
    } else {
        let rows = search_rows(art, &layout, &rule)
            .ok_or_else(|| Error::Internal("no row-uniform 4-coloring of H_phi exists".into()))?;
        (rows, ColoringSource::RowSearch)
    };
    let coloring = coloring_from_rows(art, &rows);
    if !coloring.is_proper(&art.graph) {
        return Err(Error::Internal("row coloring is not proper".into()));
    }
    Ok(FourColoring {
        coloring,
        source,
        rows,
    })
}

fn coloring_from_rows(art: &ReductionArtifact, rows: &[(u32, u32)]) -> Coloring {
    Coloring(
        art.roles
            .iter()
            .map(|r| match *r {
                Role::VariableCell { row, side, .. } | Role::ClauseCell { row, side, .. } => {
                    if side == Side::True {
                        rows[row].0
                    } else {
                        rows[row].1
                    }
                }
                Role::Dominating { .. } => 4,
                _ => 1,
            })
            .collect(),
    )
}

/// `(row, side)` of an array vertex.
fn position(art: &ReductionArtifact, v: usize) -> (usize, Side) {
    match art.roles[v] {
        Role::VariableCell { row, side, .. } | Role::ClauseCell { row, side, .. } => (row, side),
        _ => unreachable!("planted vertices are array cells"),
    }
}

fn proof_rule_rows(art: &ReductionArtifact, layout: &Layout) -> Vec<(u32, u32)> {
    let mut rows = vec![(1, 2); layout.rows()];
    let s_ids: Vec<usize> = S_SET.iter().map(|l| p_index(l)).collect();
    for ids in &art.embedded_p {
        for (t, &w) in ids[3..].iter().enumerate() {
            let (row, _) = position(art, w);
            rows[row] = if s_ids.contains(&(t + 3)) {
                let v = (0..3)
                    .find(|&r| art.graph.has_edge(w, ids[r]))
                    .expect("S vertex sees U");
                let (_, side) = position(art, ids[v]);
                // v is colored 1 on the true side, 2 on the false side
                if side == Side::False {
                    (1, 2)
                } else {
                    (2, 1)
                }
            } else {
                (3, 2)
            };
        }
    }
    rows
}

type RowCheck<'a> = dyn Fn(&[(u32, u32)], &[bool], usize) -> bool + 'a;

const PAIRS: [(u32, u32); 6] = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)];

/// Backtracking over clause-row pairs with variable rows kept at (1,2);
/// falls back to searching variable rows too.
fn search_rows(
    art: &ReductionArtifact,
    layout: &Layout,
    seed: &[(u32, u32)],
) -> Option<Vec<(u32, u32)>> {
    // constraints between rows come only from planted edges
    let mut constraints: Vec<(usize, Side, usize, Side)> = Vec::new();
    for ids in &art.embedded_p {
        for (a, b) in p_edges() {
            let (ra, sa) = position(art, ids[a]);
            let (rb, sb) = position(art, ids[b]);
            constraints.push((ra, sa, rb, sb));
        }
    }
    let color = |rows: &[(u32, u32)], r: usize, s: Side| {
        if s == Side::True {
            rows[r].0
        } else {
            rows[r].1
        }
    };
    let n_rows = layout.rows();
    for fix_variables in [true, false] {
        let order: Vec<usize> = if fix_variables {
            (layout.n..n_rows).collect()
        } else {
            (0..n_rows).collect()
        };
        let mut rows = seed.to_vec();
        let mut assigned = vec![false; n_rows];
        if fix_variables {
            assigned[..layout.n].iter_mut().for_each(|a| *a = true);
            rows[..layout.n].iter_mut().for_each(|p| *p = (1, 2));
        }
        fn go(
            i: usize,
            order: &[usize],
            rows: &mut Vec<(u32, u32)>,
            assigned: &mut Vec<bool>,
            seed: &[(u32, u32)],
            ok: &RowCheck,
        ) -> bool {
            let Some(&r) = order.get(i) else { return true };
            let mut candidates = vec![seed[r]];
            candidates.extend(PAIRS.iter().copied().filter(|&p| p != seed[r]));
            assigned[r] = true;
            for p in candidates {
                rows[r] = p;
                if ok(rows, assigned, r) && go(i + 1, order, rows, assigned, seed, ok) {
                    return true;
                }
            }
            assigned[r] = false;
            false
        }
        let ok = |rows: &[(u32, u32)], assigned: &[bool], r: usize| {
            constraints.iter().all(|&(ra, sa, rb, sb)| {
                if (ra != r && rb != r) || !assigned[ra] || !assigned[rb] {
                    return true;
                }
                color(rows, ra, sa) != color(rows, rb, sb)
            })
        };
        if go(0, &order, &mut rows, &mut assigned, seed, &ok) {
            return Some(rows);
        }
    }
    None
}

/// Builds the near-3-choosable decomposition that a satisfying assignment
/// induces, and validates it.
pub fn decomposition_from_assignment(
    art: &ReductionArtifact,
    tau: &[bool],
) -> Result<Decomposition> {
    let layout = Layout::of(art)?;
    let phi = art.formula.as_ref().expect("checked by layout");
    phi.check_assignment(tau)?;
    // whether the true side of each row goes to A
    let mut true_in_a = vec![false; layout.rows()];
    for (i, &value) in tau.iter().enumerate() {
        true_in_a[i] = !value;
    }
    for (s, clause) in phi.clauses().iter().enumerate() {
        let mask = (0..3)
            .filter(|&r| !clause[r].eval(tau))
            .fold(0u8, |m, r| m | 1 << r);
        let ext = extension(mask);
        for t in 0..14 {
            true_in_a[layout.clause_row(s, t)] = ext.contains(&(t + 3));
        }
    }
    let a: Vec<usize> = art
        .roles
        .iter()
        .enumerate()
        .filter(|(_, r)| match **r {
            Role::VariableCell { row, side, .. } | Role::ClauseCell { row, side, .. } => {
                true_in_a[row] == (side == Side::True)
            }
            Role::D0 => true,
            _ => false,
        })
        .map(|(v, _)| v)
        .collect();
    let d = Decomposition::from_a(&art.graph, &a);
    d.validate(&art.graph)?;
    Ok(d)
}
