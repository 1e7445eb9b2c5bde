//! Check reports and counterexample witnesses.
//!
//! Every verifier scans its domain in index order (parameter first, then
//! each argument) and reports the first failing tuple it meets, so the
//! witness is the lexicographically least counterexample and is identical
//! across worker counts.

use serde::{Deserialize, Serialize};

/// A concrete counterexample to one named check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Name of the check that failed.
    pub check: String,
    /// Parameter value at which the failure occurs.
    pub lambda: String,
    /// The remaining arguments of the failing tuple, as labels.
    pub inputs: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one exhaustive check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of tuples evaluated. When a check fails, the failing
    /// parameter slice stops early but every other slice still runs, so
    /// the count stays deterministic.
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Reason the check did not apply to this input (for example a
    /// boundary check on a document with no family). A skipped check is
    /// not a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    /// Marks a classification rather than an axiom: the scan reports
    /// whether a property holds (with a witness when it does not), but a
    /// negative outcome says something about the structure, not that the
    /// document is wrong. Advisory reports never fail a verification run.
    #[serde(default, skip_serializing_if = "is_false")]
    pub advisory: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

impl CheckReport {
    pub fn from_scan(name: &str, cases: u64, witness: Option<Witness>) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: witness.is_none(),
            cases,
            witness,
            skipped: None,
            advisory: false,
        }
    }

    pub fn pass(name: &str, cases: u64) -> Self {
        Self::from_scan(name, cases, None)
    }

    pub fn skip(name: &str, reason: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            passed: true,
            cases: 0,
            witness: None,
            skipped: Some(reason.to_string()),
            advisory: false,
        }
    }

    /// Downgrades the report to a classification; see [`Self::advisory`].
    pub fn into_advisory(mut self) -> Self {
        self.advisory = true;
        self
    }

    /// Whether this report should fail a verification run.
    pub fn is_failure(&self) -> bool {
        !self.passed && !self.advisory
    }

    /// One-line human rendering, stable enough to grep in CI logs.
    pub fn render(&self) -> String {
        if let Some(reason) = &self.skipped {
            return format!("SKIP {}: {}", self.name, reason);
        }
        if self.advisory {
            return match &self.witness {
                None => format!("INFO {}: holds ({} cases)", self.name, self.cases),
                Some(w) => format!(
                    "INFO {}: fails ({} cases) witness: lambda={} inputs=[{}] lhs={} rhs={}",
                    self.name,
                    self.cases,
                    w.lambda,
                    w.inputs.join(", "),
                    w.lhs,
                    w.rhs
                ),
            };
        }
        if self.passed {
            format!("PASS {} ({} cases)", self.name, self.cases)
        } else {
            let w = self.witness.as_ref().expect("failed check has a witness");
            format!(
                "FAIL {} ({} cases) witness: lambda={} inputs=[{}] lhs={} rhs={}",
                self.name,
                self.cases,
                w.lambda,
                w.inputs.join(", "),
                w.lhs,
                w.rhs
            )
        }
    }
}

/// Runs `per_lambda` over every parameter index and merges the slices.
///
/// Each slice returns how many tuples it evaluated plus its first failure.
/// Slices run in parallel under the ambient rayon pool; the merged witness
/// is the one from the smallest parameter index, so the result does not
/// depend on scheduling.
pub fn scan_lambdas<F>(n_lambda: usize, per_lambda: F) -> (u64, Option<Witness>)
where
    F: Fn(usize) -> (u64, Option<Witness>) + Sync + Send,
{
    use rayon::prelude::*;
    let slices: Vec<(u64, Option<Witness>)> =
        (0..n_lambda).into_par_iter().map(per_lambda).collect();
    let cases = slices.iter().map(|s| s.0).sum();
    let witness = slices.into_iter().find_map(|s| s.1);
    (cases, witness)
}

/// Renders a tuple of labels as a single value string, e.g. `(l5, x1)`.
pub fn tuple_label(parts: &[&str]) -> String {
    format!("({})", parts.join(", "))
}
