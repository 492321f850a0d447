//! 2-choosability through cores, list colorability, and an exhaustive
//! k-choosability oracle for small graphs.
//!
//! A graph is 2-choosable exactly when every component of its core (what is
//! left after repeatedly deleting degree-1 vertices) is `K1`, an even cycle
//! `C_{2m+2}`, or a theta graph `θ_{2,2,2m}`, `m >= 1`. Lists never interact
//! across components, so the test is applied component by component.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Shape of one connected component of a core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoreKind {
    K1,
    /// `C_{2m+2}`.
    EvenCycle {
        m: usize,
    },
    /// `θ_{2,2,2m}`; `m = 1` is `K_{2,3}`.
    Theta22Even {
        m: usize,
    },
    OutsideC,
}

impl CoreKind {
    pub fn is_in_c(self) -> bool {
        self != CoreKind::OutsideC
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreClassification {
    pub kind: CoreKind,
    /// Sorted vertex ids of the component, in the ids of the classified graph.
    pub component: Vec<usize>,
}

/// Core of a graph together with the original id of each core vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Core {
    pub graph: Graph,
    pub kept: Vec<usize>,
}

/// Which degree-1 vertex to delete next. The non-trivial part of the core
/// does not depend on the choice; only which vertex of a tree component
/// survives as its `K1` does.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeelOrder {
    Queue,
    SmallestFirst,
    LargestFirst,
}

pub fn compute_core(g: &Graph) -> Core {
    compute_core_with(g, PeelOrder::Queue)
}

pub fn compute_core_with(g: &Graph, order: PeelOrder) -> Core {
    let mut alive = vec![true; g.n()];
    match order {
        PeelOrder::Queue => {
            peel(g, &mut alive);
        }
        PeelOrder::SmallestFirst | PeelOrder::LargestFirst => {
            let mut deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
            let mut leaves: BTreeSet<usize> = (0..g.n()).filter(|&v| deg[v] == 1).collect();
            loop {
                let next = if order == PeelOrder::SmallestFirst {
                    leaves.pop_first()
                } else {
                    leaves.pop_last()
                };
                let Some(v) = next else { break };
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
        }
    }
    let kept: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    Core {
        graph: g.induced_subgraph(&kept),
        kept,
    }
}

/// Deletes degree-1 vertices of `g[alive]` until none is left; returns the
/// degrees inside the surviving subgraph.
fn peel(g: &Graph, alive: &mut [bool]) -> Vec<usize> {
    let mut deg: Vec<usize> = (0..g.n())
        .map(|v| {
            if alive[v] {
                g.neighbors(v).iter().filter(|&&w| alive[w]).count()
            } else {
                0
            }
        })
        .collect();
    let mut queue: VecDeque<usize> = (0..g.n()).filter(|&v| alive[v] && deg[v] == 1).collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v] || deg[v] != 1 {
            continue;
        }
        alive[v] = false;
        deg[v] = 0;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    deg
}

/// Classifies every component of a core.
pub fn classify_core(core: &Graph) -> Result<Vec<CoreClassification>> {
    if let Some(v) = (0..core.n()).find(|&v| core.degree(v) == 1) {
        return Err(Error::NotACore(v));
    }
    let alive = vec![true; core.n()];
    let deg: Vec<usize> = (0..core.n()).map(|v| core.degree(v)).collect();
    Ok(components_of(core, &alive)
        .into_iter()
        .map(|component| CoreClassification {
            kind: classify_component(core, &alive, &deg, &component),
            component,
        })
        .collect())
}

fn components_of(g: &Graph, alive: &[bool]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for root in 0..g.n() {
        if !alive[root] || seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in g.neighbors(u) {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// `comp` is a connected vertex set of `g[alive]` without degree-1 vertices.
fn classify_component(g: &Graph, alive: &[bool], deg: &[usize], comp: &[usize]) -> CoreKind {
    if comp.len() == 1 {
        return CoreKind::K1;
    }
    let hubs: Vec<usize> = comp.iter().copied().filter(|&v| deg[v] != 2).collect();
    if hubs.is_empty() {
        return if comp.len().is_multiple_of(2) {
            CoreKind::EvenCycle {
                m: (comp.len() - 2) / 2,
            }
        } else {
            CoreKind::OutsideC
        };
    }
    if hubs.len() != 2 || hubs.iter().any(|&h| deg[h] != 3) {
        return CoreKind::OutsideC;
    }
    let (a, b) = (hubs[0], hubs[1]);
    let mut lengths = Vec::with_capacity(3);
    for &start in g.neighbors(a).iter().filter(|&&w| alive[w]) {
        let (mut prev, mut cur, mut len) = (a, start, 1);
        while deg[cur] == 2 {
            let next = g
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| alive[w] && w != prev)
                .expect("degree-2 vertex has a second neighbor");
            prev = cur;
            cur = next;
            len += 1;
        }
        if cur != b {
            return CoreKind::OutsideC;
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    match lengths[..] {
        [2, 2, l] if l % 2 == 0 => CoreKind::Theta22Even { m: l / 2 },
        _ => CoreKind::OutsideC,
    }
}

/// Answer of the core-based 2-choosability test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwoChoosability {
    Choosable,
    /// `component` is a core component outside the set C, in original ids.
    NotChoosable {
        component: Vec<usize>,
    },
}

impl TwoChoosability {
    pub fn is_choosable(&self) -> bool {
        matches!(self, TwoChoosability::Choosable)
    }
}

pub fn is_2_choosable(g: &Graph) -> TwoChoosability {
    match offending_component(g, &vec![true; g.n()]) {
        None => TwoChoosability::Choosable,
        Some(component) => TwoChoosability::NotChoosable { component },
    }
}

/// 2-choosability of the subgraph induced by `keep`, without building it.
pub fn is_2_choosable_induced(g: &Graph, keep: &[bool]) -> bool {
    offending_component(g, keep).is_none()
}

/// The first core component of `g[keep]` outside C, in ids of `g`.
pub fn offending_component(g: &Graph, keep: &[bool]) -> Option<Vec<usize>> {
    let mut alive = keep.to_vec();
    let deg = peel(g, &mut alive);
    components_of(g, &alive)
        .into_iter()
        .find(|comp| classify_component(g, &alive, &deg, comp) == CoreKind::OutsideC)
}

/// A color list per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment(pub Vec<Vec<u32>>);

impl ListAssignment {
    /// Sorts and dedups every list, and checks they are nonempty and sized
    /// for `g`.
    pub fn new(lists: Vec<Vec<u32>>) -> Result<Self> {
        let lists: Vec<Vec<u32>> = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l
            })
            .collect();
        if let Some(v) = lists.iter().position(Vec::is_empty) {
            return Err(Error::InvalidLists(format!(
                "vertex {} has an empty list",
                v + 1
            )));
        }
        Ok(ListAssignment(lists))
    }

    pub fn uniform(n: usize, colors: &[u32]) -> Self {
        ListAssignment::new(vec![colors.to_vec(); n]).expect("nonempty colors")
    }

    pub fn is_k_assignment(&self, k: usize) -> bool {
        self.0.iter().all(|l| l.len() == k)
    }
}

/// One line per vertex, `v: c1 c2 ... ck`, with 1-based vertex ids.
impl fmt::Display for ListAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, list) in self.0.iter().enumerate() {
            write!(f, "{}:", v + 1)?;
            for c in list {
                write!(f, " {c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for ListAssignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lists = Vec::new();
        for (i, line) in s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let (vertex, colors) = line
                .split_once(':')
                .ok_or_else(|| Error::parse(i + 1, "expected `v: c1 c2 ...`"))?;
            let v: usize = vertex
                .trim()
                .parse()
                .map_err(|_| Error::parse(i + 1, "bad vertex id"))?;
            if v != lists.len() + 1 {
                return Err(Error::parse(
                    i + 1,
                    format!("expected vertex {}", lists.len() + 1),
                ));
            }
            let list = colors
                .split_whitespace()
                .map(|c| c.parse::<u32>().ok().filter(|&c| c > 0))
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| Error::parse(i + 1, "colors must be positive integers"))?;
            lists.push(list);
        }
        ListAssignment::new(lists)
    }
}

/// Searches for a proper coloring picking each vertex's color from its list.
/// Vertices go in ascending id order, list colors ascending.
pub fn is_l_colorable(g: &Graph, lists: &ListAssignment) -> Result<Option<Vec<u32>>> {
    if lists.0.len() != g.n() {
        return Err(Error::InvalidLists(format!(
            "{} lists for {} vertices",
            lists.0.len(),
            g.n()
        )));
    }
    if lists.0.iter().any(Vec::is_empty) {
        return Err(Error::InvalidLists("empty list".into()));
    }
    let mut colors = vec![0u32; g.n()];
    Ok(list_color_from(g, &lists.0, 0, &mut colors).then_some(colors))
}

fn list_color_from(g: &Graph, lists: &[Vec<u32>], v: usize, colors: &mut [u32]) -> bool {
    if v == g.n() {
        return true;
    }
    for &c in &lists[v] {
        // only earlier neighbors are colored
        if g.neighbors(v)
            .iter()
            .take_while(|&&w| w < v)
            .any(|&w| colors[w] == c)
        {
            continue;
        }
        colors[v] = c;
        if list_color_from(g, lists, v + 1, colors) {
            return true;
        }
    }
    colors[v] = 0;
    false
}

/// Result of the exhaustive oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExhaustiveChoosability {
    Choosable {
        assignments_checked: u64,
    },
    /// A k-list assignment admitting no coloring.
    NotChoosable(ListAssignment),
}

impl ExhaustiveChoosability {
    pub fn is_choosable(&self) -> bool {
        matches!(self, ExhaustiveChoosability::Choosable { .. })
    }
}

/// Decides k-choosability by trying every k-list assignment up to renaming
/// of colors.
///
/// Vertices receive lists in ascending id order, and a color may appear for
/// the first time only as the smallest integer not used so far, so each
/// assignment is visited once per color-renaming class and the palette stays
/// within `k * n`. Stops at the first uncolorable assignment. The budget
/// counts assignments checked.
pub fn is_k_choosable_exhaustive(
    g: &Graph,
    k: usize,
    budget: &mut Budget,
) -> Result<ExhaustiveChoosability> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let mut lists: Vec<Vec<u32>> = Vec::with_capacity(g.n());
    let mut checked = 0u64;
    let found = enumerate_lists(g, k, 0, &mut lists, budget, &mut checked)?;
    Ok(match found {
        Some(bad) => ExhaustiveChoosability::NotChoosable(ListAssignment(bad)),
        None => ExhaustiveChoosability::Choosable {
            assignments_checked: checked,
        },
    })
}

fn enumerate_lists(
    g: &Graph,
    k: usize,
    used: u32,
    lists: &mut Vec<Vec<u32>>,
    budget: &mut Budget,
    checked: &mut u64,
) -> Result<Option<Vec<Vec<u32>>>> {
    let v = lists.len();
    if v == g.n() {
        budget.tick()?;
        *checked += 1;
        let mut colors = vec![0u32; g.n()];
        return Ok((!list_color_from(g, lists, 0, &mut colors)).then(|| lists.clone()));
    }
    for fresh in 0..=k {
        let old = k - fresh;
        if old as u32 > used {
            continue;
        }
        let new_colors: Vec<u32> = (used + 1..=used + fresh as u32).collect();
        for subset in subsets(used, old) {
            let mut list = subset;
            list.extend_from_slice(&new_colors);
            lists.push(list);
            let r = enumerate_lists(g, k, used + fresh as u32, lists, budget, checked)?;
            lists.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
    }
    Ok(None)
}

/// All `size`-subsets of `1..=universe`, each ascending, in lexicographic order.
fn subsets(universe: u32, size: usize) -> Vec<Vec<u32>> {
    fn go(start: u32, universe: u32, size: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for c in start..=universe {
            cur.push(c);
            go(c + 1, universe, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, universe, size, &mut Vec::new(), &mut out);
    out
}
