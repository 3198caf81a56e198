use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::corpus::{Corpus, CorpusEntry};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub graph6: String,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub graph6: String,
    pub reason: String,
}

/// Result of checking one entry.
#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Passed,
    Violation { expected: Value, actual: Value },
    Skipped(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    /// Violations are failures.
    Theorem,
    /// Violations are findings.
    Conjecture,
    Audit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub theorem_id: String,
    pub kind: ClaimKind,
    pub source: String,
    pub total: usize,
    pub passed: usize,
    pub violations: Vec<Violation>,
    pub skipped: Vec<Skip>,
    /// graph6 strings that occur more than once in the corpus.
    pub duplicates: Vec<String>,
    /// Seconds.
    pub wall_time: f64,
}

impl Report {
    pub(crate) fn collect(
        theorem_id: &str,
        kind: ClaimKind,
        corpus: &Corpus,
        outcomes: Vec<(&CorpusEntry, Outcome)>,
        elapsed: Duration,
    ) -> Self {
        let mut passed = 0;
        let mut violations = Vec::new();
        let mut skipped = Vec::new();
        let total = outcomes.len();
        for (e, o) in outcomes {
            match o {
                Outcome::Passed => passed += 1,
                Outcome::Violation { expected, actual } => violations.push(Violation {
                    graph6: e.graph6.clone(),
                    expected,
                    actual,
                }),
                Outcome::Skipped(reason) => skipped.push(Skip {
                    graph6: e.graph6.clone(),
                    reason,
                }),
            }
        }
        Report {
            theorem_id: theorem_id.to_string(),
            kind,
            source: corpus.source().to_string(),
            total,
            passed,
            violations,
            skipped,
            duplicates: corpus.duplicates().iter().map(|e| e.graph6.clone()).collect(),
            wall_time: elapsed.as_secs_f64(),
        }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// Entries that met the preconditions.
    pub fn eligible(&self) -> usize {
        self.total - self.skipped.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.total == self.passed + self.violations.len() + self.skipped.len()
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} checked, {} passed, {} violations, {} skipped ({:.2}s)",
            self.theorem_id,
            self.total,
            self.passed,
            self.violations.len(),
            self.skipped.len(),
            self.wall_time
        )
    }
}
