use std::cell::Cell;

use crate::error::{Error, Result};

/// Default search-node budget, overridable through `SECNUM_BUDGET`.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Node counter shared by one computation.
///
/// Every search (map enumeration, fence BFS, open-lattice descent, set
/// cover) charges nodes here. Exhaustion surfaces as
/// [`Error::BudgetExhausted`], which callers must read as "inconclusive".
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: Cell<u64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: Cell::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn spend(&self, nodes: u64) -> Result<()> {
        let used = self.used.get().saturating_add(nodes);
        self.used.set(used);
        if used > self.limit {
            Err(Error::BudgetExhausted { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

/// Size caps applied by constructions that can blow up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest space for which `all_open_sets` and the census will enumerate.
    pub max_points: usize,
    /// Largest product, pullback or configuration space that may be built.
    pub max_product: usize,
    /// Node budget handed to each top-level computation.
    pub budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_points: 10,
            max_product: 4096,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Limits {
    /// Defaults with the budget taken from `SECNUM_BUDGET` when it parses.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(b) = std::env::var("SECNUM_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            limits.budget = b;
        }
        limits
    }

    pub fn new_budget(&self) -> Budget {
        Budget::new(self.budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustion_is_reported() {
        let b = Budget::new(2);
        assert!(b.spend(1).is_ok());
        assert!(b.spend(1).is_ok());
        assert!(b.spend(1).unwrap_err().is_budget());
    }
}
