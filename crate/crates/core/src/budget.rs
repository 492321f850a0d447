use crate::error::{Error, Result};

/// Node-expansion counter shared by the exhaustive searches.
///
/// Budgets count search nodes rather than wall-clock time so that a run is
/// reproducible on any machine.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    expanded: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, expanded: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// Charge one node; fails once the limit is crossed.
    pub fn tick(&mut self) -> Result<()> {
        self.expanded += 1;
        if self.expanded > self.limit {
            return Err(Error::BudgetExceeded {
                limit: self.limit,
                expanded: self.expanded,
            });
        }
        Ok(())
    }

    pub fn expanded(&self) -> u64 {
        self.expanded
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(50_000_000)
    }
}
