//! Property suites over the built-in algebras, shared by the command line
//! and the test harness.

mod worked;
mod properties;

pub use worked::{worked_cases, run_worked_examples, WorkedCase, CaseOutcome};
pub use properties::{
    counterexample_suite, degree_stability_suite, leibman_suite, representation_suite, structural_suite,
};

use std::time::Duration;

/// One named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            label: label.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_case_list() {
        let cases = worked_cases().unwrap();
        assert_eq!(cases.len(), 6);
        assert_eq!(cases.iter().filter(|c| c.expected_first.is_some()).count(), 2);
    }

    #[test]
    fn seeded_suite_is_reproducible() {
        let a = representation_suite(3, 4).unwrap();
        let b = representation_suite(3, 4).unwrap();
        assert!(a.passed());
        assert_eq!(a.checks, b.checks);
    }

    #[test]
    fn counterexamples_pass() {
        assert!(counterexample_suite().unwrap().passed());
    }
}
