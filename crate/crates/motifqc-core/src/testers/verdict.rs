//! Tester outcomes.

use serde::{Deserialize, Serialize};

use crate::oracle::QueryCounts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Accept,
    Reject,
}

/// Stage labels used in verdicts. The failing level / pattern lives in the
/// attached [`FailingCheck`].
pub mod stage {
    pub const COUNT_CHECK: &str = "count_check";
    pub const JUMBLEDNESS_DEGREE: &str = "jumbledness_degree";
    pub const JUMBLEDNESS_CODEGREE: &str = "jumbledness_codegree";
    pub const ARBORICITY_FILTER: &str = "arboricity_filter";
    pub const AVG_DEGREE_FILTER: &str = "avg_degree_filter";
    pub const TRIANGLE_LOW: &str = "triangle_estimate_low";
    pub const TRIANGLE_HIGH: &str = "triangle_estimate_high";
    pub const STEP_LIMIT: &str = "step_limit";
}

/// The first check that failed: the level (pattern size) it occurred at, the
/// pattern when the tester distinguishes several per level, the observed
/// count and the accepted interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailingCheck {
    pub level: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pattern: Option<String>,
    pub observed: f64,
    pub low: f64,
    pub high: f64,
}

/// Accept/reject with enough context to reproduce the decision: the failing
/// check, the stage that decided, and the oracle counters at return time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub decision: Decision,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stage: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failing_check: Option<FailingCheck>,
    pub queries: QueryCounts,
    pub wall_time_ms: f64,
}

impl Verdict {
    pub fn accept(queries: QueryCounts, wall_time_ms: f64) -> Self {
        Verdict {
            decision: Decision::Accept,
            stage: None,
            failing_check: None,
            queries,
            wall_time_ms,
        }
    }

    pub fn reject(
        stage: &str,
        check: FailingCheck,
        queries: QueryCounts,
        wall_time_ms: f64,
    ) -> Self {
        Verdict {
            decision: Decision::Reject,
            stage: Some(stage.to_string()),
            failing_check: Some(check),
            queries,
            wall_time_ms,
        }
    }

    pub fn is_accept(&self) -> bool {
        self.decision == Decision::Accept
    }

    /// Equality ignoring wall time, for determinism checks.
    pub fn same_outcome(&self, other: &Verdict) -> bool {
        self.decision == other.decision
            && self.stage == other.stage
            && self.failing_check == other.failing_check
            && self.queries == other.queries
    }
}
