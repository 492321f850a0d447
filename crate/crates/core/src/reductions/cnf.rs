//! 3-CNF formulas.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A signed variable; `var` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn new(var: u32, positive: bool) -> Self {
        Literal { var, positive }
    }

    /// From a DIMACS integer (nonzero).
    pub fn from_dimacs(x: i64) -> Option<Self> {
        if x == 0 || x.unsigned_abs() > u32::MAX as u64 {
            return None;
        }
        Some(Literal::new(x.unsigned_abs() as u32, x > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    /// Value under `tau`, indexed by `var - 1`.
    pub fn eval(self, tau: &[bool]) -> bool {
        tau[self.var as usize - 1] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    num_vars: usize,
    clauses: Vec<[Literal; 3]>,
    /// Per clause, a permutation of the slots 0..3 giving the order in which
    /// its literals attach around the clause gadget.
    rotation: Option<Vec<[usize; 3]>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            for l in c {
                if l.var == 0 || l.var as usize > num_vars {
                    return Err(Error::Formula(format!(
                        "clause {}: variable {} out of range 1..={num_vars}",
                        j + 1,
                        l.var
                    )));
                }
            }
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                return Err(Error::Formula(format!(
                    "clause {}: repeated literal",
                    j + 1
                )));
            }
        }
        Ok(CnfFormula {
            num_vars,
            clauses,
            rotation: None,
        })
    }

    pub fn with_rotation(mut self, rotation: Vec<[usize; 3]>) -> Result<Self> {
        if rotation.len() != self.clauses.len() {
            return Err(Error::Formula(format!(
                "rotation has {} entries for {} clauses",
                rotation.len(),
                self.clauses.len()
            )));
        }
        for (j, r) in rotation.iter().enumerate() {
            let mut s = *r;
            s.sort_unstable();
            if s != [0, 1, 2] {
                return Err(Error::Formula(format!(
                    "clause {}: rotation is not a permutation",
                    j + 1
                )));
            }
        }
        self.rotation = Some(rotation);
        Ok(self)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn rotation(&self) -> Option<&[[usize; 3]]> {
        self.rotation.as_deref()
    }

    /// Literals of clause `j` in attachment order (rotation, or clause order).
    pub fn rotated(&self, j: usize) -> [Literal; 3] {
        let c = self.clauses[j];
        match &self.rotation {
            Some(r) => r[j].map(|i| c[i]),
            None => c,
        }
    }

    /// Whether some variable appears twice in one clause.
    pub fn has_repeated_variable(&self) -> bool {
        self.clauses
            .iter()
            .any(|c| c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var)
    }

    /// Index of the first clause `tau` falsifies.
    pub fn first_unsatisfied(&self, tau: &[bool]) -> Option<usize> {
        self.clauses
            .iter()
            .position(|c| !c.iter().any(|l| l.eval(tau)))
    }

    pub fn check_assignment(&self, tau: &[bool]) -> Result<()> {
        if tau.len() != self.num_vars {
            return Err(Error::InvalidArgument(format!(
                "assignment has {} values for {} variables",
                tau.len(),
                self.num_vars
            )));
        }
        match self.first_unsatisfied(tau) {
            Some(j) => Err(Error::Unsatisfied(j + 1)),
            None => Ok(()),
        }
    }

    /// All satisfying assignments, in binary counting order with `x1` as the
    /// most significant bit.
    pub fn satisfying_assignments(&self) -> Vec<Vec<bool>> {
        let n = self.num_vars;
        assert!(n <= 24, "too many variables to enumerate");
        (0..1u32 << n)
            .map(|bits| {
                (0..n)
                    .map(|i| bits >> (n - 1 - i) & 1 == 1)
                    .collect::<Vec<_>>()
            })
            .filter(|tau| self.first_unsatisfied(tau).is_none())
            .collect()
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.clauses.iter().enumerate() {
            if j > 0 {
                write!(f, " ∧ ")?;
            }
            write!(f, "({} ∨ {} ∨ {})", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

/// Parses a bit string such as `"101"` into an assignment.
pub fn parse_assignment(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '1' | 'T' | 't' => Ok(true),
            '0' | 'F' | 'f' => Ok(false),
            _ => Err(Error::InvalidArgument(format!(
                "bad assignment character {c:?}"
            ))),
        })
        .collect()
}
