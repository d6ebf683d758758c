//! Budgeted exact search results.

use std::fmt;

/// Default number of search nodes a search may expand.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Bound on the number of nodes a search may expand. Expressed in nodes rather
/// than wall time so that results are reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

/// Three-valued answer of a budgeted search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    /// A witness was found.
    Found(T),
    /// The whole search space was explored without success.
    Exhausted,
    /// The budget ran out first.
    Unknown,
}

impl<T> SearchOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::Exhausted)
    }

    /// `true` for `Found` and `Exhausted`.
    pub fn is_complete(&self) -> bool {
        !matches!(self, SearchOutcome::Unknown)
    }

    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    /// `Some(true)` when found, `Some(false)` when exhausted.
    pub fn decided(&self) -> Option<bool> {
        match self {
            SearchOutcome::Found(_) => Some(true),
            SearchOutcome::Exhausted => Some(false),
            SearchOutcome::Unknown => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> SearchOutcome<U> {
        match self {
            SearchOutcome::Found(t) => SearchOutcome::Found(f(t)),
            SearchOutcome::Exhausted => SearchOutcome::Exhausted,
            SearchOutcome::Unknown => SearchOutcome::Unknown,
        }
    }
}

impl<T> fmt::Display for SearchOutcome<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchOutcome::Found(_) => "FOUND",
            SearchOutcome::Exhausted => "EXHAUSTED",
            SearchOutcome::Unknown => "UNKNOWN",
        })
    }
}

/// Node counter shared by the recursive searches.
pub(crate) struct Meter {
    left: u64,
}

impl Meter {
    pub(crate) fn new(budget: Budget) -> Self {
        Self { left: budget.0 }
    }

    /// Charges one node; `false` once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        if self.left == 0 {
            return false;
        }
        self.left -= 1;
        true
    }
}
