//! Outcomes of exact relation checks.

use serde::Serialize;

/// A relation that failed on a concrete basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationViolation {
    pub relation: String,
    pub vector: String,
    /// `lhs - rhs` applied to the vector.
    pub difference: String,
}

/// Result of checking a family of operator identities on a finite set of
/// basis vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records one identity check; `difference` must vanish.
    pub fn record<D: std::fmt::Display>(
        &mut self,
        relation: impl FnOnce() -> String,
        vector: impl FnOnce() -> String,
        difference: &D,
        is_zero: bool,
    ) {
        self.checked += 1;
        if !is_zero {
            self.violations.push(RelationViolation {
                relation: relation(),
                vector: vector(),
                difference: difference.to_string(),
            });
        }
    }

    pub fn merge(&mut self, other: RelationReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}
