//! Machine-readable result documents for the batch front end.
//!
//! Every CLI invocation emits exactly one [`Report`] as JSON on standard
//! output. Key order is fixed by field declaration order, and `params`,
//! `failures`, and `results` iterate deterministically, so two runs with the
//! same arguments produce byte-identical documents except for
//! `wall_time_ms`.

use std::collections::BTreeMap;

use serde::Serialize;

/// One failed check: what was asserted, what was expected, what came out.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Failure {
    pub case_id: String,
    pub expected: String,
    pub actual: String,
}

/// Aggregated outcome of one verification or solving suite.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Report {
    /// Subcommand name.
    pub command: String,
    /// Effective parameters after defaulting, canonically rendered.
    pub params: BTreeMap<String, String>,
    /// Number of individual checks run.
    pub cases_total: u64,
    /// Checks that did not come out as expected, in deterministic order.
    pub failures: Vec<Failure>,
    /// Solver outputs that are not pass/fail checks (dimensions, bases,
    /// recovered records, witness indices).
    pub results: BTreeMap<String, String>,
    /// Wall-clock duration; the only field allowed to vary between runs.
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            params: BTreeMap::new(),
            cases_total: 0,
            failures: Vec::new(),
            results: BTreeMap::new(),
            wall_time_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn result(&mut self, key: &str, value: impl ToString) {
        self.results.insert(key.to_string(), value.to_string());
    }

    /// Records one check; `pass = false` appends to the failure list.
    pub fn case(&mut self, case_id: &str, expected: &str, actual: &str, pass: bool) {
        self.cases_total += 1;
        if !pass {
            self.failures.push(Failure {
                case_id: case_id.to_string(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    /// Shorthand for a check whose expected value is exact zero.
    pub fn case_zero(&mut self, case_id: &str, actual: &impl std::fmt::Display, is_zero: bool) {
        if is_zero {
            self.cases_total += 1;
        } else {
            self.case(case_id, "0", &actual.to_string(), false);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The single JSON document this invocation prints, newline-terminated.
    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}
