//! Violation reports shared by the graph and PCD validators.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationCode {
    // graph invariants
    SelfLoop,
    MultiEdge,
    NonpositiveWeight,
    MissingRoute,
    RouteEndpointMismatch,
    NonSimpleRoute,
    RouteNotOnEdges,
    InteriorBoundaryVertex,
    TreeConsistencyViolation,
    // PCD invariants
    MissingEntry,
    NonpositiveLength,
    RangeViolation,
    ThreePointViolation,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant serializes");
        write!(f, "{}", s.as_str().unwrap_or_default())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub description: String,
    /// Offending vertex ids (edge endpoints, route endpoints, ...).
    pub items: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self {
            valid: true,
            violations: Vec::new(),
        }
    }

    pub fn push(&mut self, code: ViolationCode, description: impl Into<String>, items: Vec<String>) {
        self.valid = false;
        self.violations.push(Violation {
            code,
            description: description.into(),
            items,
        });
    }

    pub fn has(&self, code: ViolationCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    pub fn count(&self, code: ViolationCode) -> usize {
        self.violations.iter().filter(|v| v.code == code).count()
    }
}
