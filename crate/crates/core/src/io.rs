//! Text formats. Vertex and variable ids are 1-based on the outside.
//!
//! Graphs:
//!
//! ```text
//! c any comment
//! p edge <n> <m>
//! c label <v> <text>      (optional, one per labelled vertex; text is trimmed)
//! e <u> <v>               (m lines)
//! ```
//!
//! Formulas are DIMACS CNF with exactly three literals per clause. A comment
//! `c rot <j> <a> <b> <c>` gives the order (a permutation of `1 2 3`) in
//! which the literals of clause `j` attach to its gadget.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reductions::cnf::{CnfFormula, Literal};

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} {tok:?}")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<(Graph, usize)> = None;
    let mut labels: Vec<(usize, usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None => {}
            Some("c") => {
                if toks.next() == Some("label") {
                    // the label is the rest of the line, inner spacing kept
                    let rest = raw.trim_start()[1..].trim_start()["label".len()..].trim_start();
                    let (v, text) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                    let v: usize = number(Some(v), line, "vertex")?;
                    labels.push((line, v, text.trim().to_string()));
                }
            }
            Some("p") => {
                if graph.is_some() {
                    return Err(Error::parse(line, "second problem line"));
                }
                if toks.next() != Some("edge") {
                    return Err(Error::parse(line, "expected \"p edge <n> <m>\""));
                }
                let n: usize = number(toks.next(), line, "vertex count")?;
                let m: usize = number(toks.next(), line, "edge count")?;
                if toks.next().is_some() {
                    return Err(Error::parse(line, "trailing tokens"));
                }
                graph = Some((Graph::new(n), m));
            }
            Some("e") => {
                let (g, _) = graph
                    .as_mut()
                    .ok_or_else(|| Error::parse(line, "edge before problem line"))?;
                let u: usize = number(toks.next(), line, "endpoint")?;
                let v: usize = number(toks.next(), line, "endpoint")?;
                if toks.next().is_some() {
                    return Err(Error::parse(line, "trailing tokens"));
                }
                let n = g.n();
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(Error::parse(
                            line,
                            format!("vertex {x} out of range 1..={n}"),
                        ));
                    }
                }
                g.add_edge(u - 1, v - 1).map_err(|e| {
                    Error::parse(
                        line,
                        match e {
                            Error::SelfLoop(_) => format!("self-loop at {u}"),
                            Error::DuplicateEdge(..) => format!("duplicate edge {u}-{v}"),
                            other => other.to_string(),
                        },
                    )
                })?;
            }
            Some(tok) => return Err(Error::parse(line, format!("unknown line type {tok:?}"))),
        }
    }
    let (mut g, m) =
        graph.ok_or_else(|| Error::parse(text.lines().count().max(1), "no problem line"))?;
    if g.m() != m {
        return Err(Error::parse(
            text.lines().count(),
            format!("header announces {m} edges, found {}", g.m()),
        ));
    }
    for (line, v, label) in labels {
        if v == 0 || v > g.n() {
            return Err(Error::parse(
                line,
                format!("label for vertex {v} out of range"),
            ));
        }
        g.set_label(v - 1, label);
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    if let Some(labels) = g.labels() {
        for (v, l) in labels.iter().enumerate() {
            if !l.is_empty() {
                writeln!(out, "c label {} {}", v + 1, l).unwrap();
            }
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    let mut pending: Vec<Literal> = Vec::new();
    let mut pending_line = 0;
    let mut rotations: Vec<(usize, usize, [usize; 3])> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        let mut toks = trimmed.split_whitespace();
        if trimmed.starts_with('c') {
            if toks.next() == Some("c") && toks.next() == Some("rot") {
                let j: usize = number(toks.next(), line, "clause index")?;
                let mut perm = [0usize; 3];
                for slot in &mut perm {
                    let x: usize = number(toks.next(), line, "rotation entry")?;
                    if !(1..=3).contains(&x) {
                        return Err(Error::parse(
                            line,
                            format!("rotation entry {x} not in 1..=3"),
                        ));
                    }
                    *slot = x - 1;
                }
                let mut sorted = perm;
                sorted.sort_unstable();
                if sorted != [0, 1, 2] {
                    return Err(Error::parse(line, "rotation is not a permutation of 1 2 3"));
                }
                rotations.push((line, j, perm));
            }
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(Error::parse(line, "second problem line"));
            }
            toks.next();
            if toks.next() != Some("cnf") {
                return Err(Error::parse(line, "expected \"p cnf <n> <k>\""));
            }
            let n = number(toks.next(), line, "variable count")?;
            let k = number(toks.next(), line, "clause count")?;
            if toks.next().is_some() {
                return Err(Error::parse(line, "trailing tokens"));
            }
            header = Some((n, k));
            continue;
        }
        let (n, _) = header.ok_or_else(|| Error::parse(line, "clause before problem line"))?;
        for tok in toks {
            let x: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("bad literal {tok:?}")))?;
            if x == 0 {
                if pending.len() != 3 {
                    return Err(Error::parse(
                        line,
                        format!("clause has {} literals, expected 3", pending.len()),
                    ));
                }
                let c = [pending[0], pending[1], pending[2]];
                if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                    return Err(Error::parse(line, "duplicate literal in clause"));
                }
                clauses.push(c);
                pending.clear();
                continue;
            }
            if x.unsigned_abs() as usize > n {
                return Err(Error::parse(
                    line,
                    format!("literal {x} out of range for {n} variables"),
                ));
            }
            if pending.is_empty() {
                pending_line = line;
            }
            pending.push(Literal::from_dimacs(x).expect("nonzero"));
        }
    }
    if !pending.is_empty() {
        return Err(Error::parse(pending_line, "clause not terminated by 0"));
    }
    let (n, k) = header.ok_or_else(|| Error::parse(last_line.max(1), "no problem line"))?;
    if clauses.len() != k {
        return Err(Error::parse(
            last_line,
            format!("header announces {k} clauses, found {}", clauses.len()),
        ));
    }
    let mut phi = CnfFormula::new(n, clauses)?;
    if !rotations.is_empty() {
        let mut table: Vec<[usize; 3]> = vec![[0, 1, 2]; k];
        for (line, j, perm) in rotations {
            if j == 0 || j > k {
                return Err(Error::parse(
                    line,
                    format!("rotation for clause {j} out of range"),
                ));
            }
            table[j - 1] = perm;
        }
        phi = phi.with_rotation(table)?;
    }
    Ok(phi)
}

pub fn write_dimacs_cnf(phi: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", phi.num_vars(), phi.num_clauses());
    if let Some(rot) = phi.rotation() {
        for (j, r) in rot.iter().enumerate() {
            writeln!(
                out,
                "c rot {} {} {} {}",
                j + 1,
                r[0] + 1,
                r[1] + 1,
                r[2] + 1
            )
            .unwrap();
        }
    }
    for c in phi.clauses() {
        writeln!(
            out,
            "{} {} {} 0",
            c[0].to_dimacs(),
            c[1].to_dimacs(),
            c[2].to_dimacs()
        )
        .unwrap();
    }
    out
}
