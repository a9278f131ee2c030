//! Scenario reports: named checks with expected values, their provenance and
//! a single pass/fail verdict, emitted as text or as a JSON document.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// Where an expected value comes from: stated by the source result being
/// reproduced, or derived independently by this tool.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Paper,
    Derived,
}

impl Provenance {
    fn label(self) -> &'static str {
        match self {
            Provenance::Paper => "paper",
            Provenance::Derived => "derived",
        }
    }
}

/// One finished scenario: inputs, computed results, expectations with
/// provenance, and the verdict. `elapsed_ms` is serialized as zero so that
/// repeated runs emit byte-identical documents; wall-clock timing is carried
/// separately for the human-readable output.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub expected: BTreeMap<String, Value>,
    pub provenance: BTreeMap<String, String>,
    pub verdict: String,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub measured_ms: u128,
    #[serde(skip)]
    pub failures: Vec<String>,
    /// Structured sub-reports of a combined run, for text rendering; the
    /// JSON document carries them inside `results` instead.
    #[serde(skip)]
    pub sub_reports: Vec<ScenarioReport>,
}

impl ScenarioReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Human-readable rendering, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if !self.sub_reports.is_empty() {
            for part in &self.sub_reports {
                out.push_str(&part.render_text());
            }
            out.push_str(&format!(
                "scenario {}: {} ({} scenarios, {} ms)\n",
                self.scenario,
                self.verdict,
                self.sub_reports.len(),
                self.measured_ms
            ));
            return out;
        }
        out.push_str(&format!("scenario {}\n", self.scenario));
        for (name, expected) in &self.expected {
            let actual = self.results.get(name).cloned().unwrap_or(Value::Null);
            let tag = self.provenance.get(name).map(String::as_str).unwrap_or("?");
            let ok = if actual == *expected {
                "ok"
            } else {
                "MISMATCH"
            };
            out.push_str(&format!(
                "  [{tag}] {name} = {actual} (expected {expected}) .. {ok}\n"
            ));
        }
        for (name, value) in &self.results {
            if !self.expected.contains_key(name) {
                out.push_str(&format!("  [info] {name} = {value}\n"));
            }
        }
        out.push_str(&format!(
            "  verdict: {} ({} checks, {} ms)\n",
            self.verdict,
            self.expected.len(),
            self.measured_ms
        ));
        out
    }
}

/// Accumulates checks and informational values while a scenario runs.
pub struct Recorder {
    scenario: String,
    inputs: BTreeMap<String, Value>,
    results: BTreeMap<String, Value>,
    expected: BTreeMap<String, Value>,
    provenance: BTreeMap<String, String>,
    failures: Vec<String>,
    start: Instant,
}

impl Recorder {
    pub fn new(scenario: &str) -> Self {
        Recorder {
            scenario: scenario.to_string(),
            inputs: BTreeMap::new(),
            results: BTreeMap::new(),
            expected: BTreeMap::new(),
            provenance: BTreeMap::new(),
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    pub fn input(&mut self, name: &str, value: impl Into<Value>) {
        self.inputs.insert(name.to_string(), value.into());
    }

    /// Records a computed value without attaching an expectation.
    pub fn info(&mut self, name: &str, value: impl Into<Value>) {
        self.results.insert(name.to_string(), value.into());
    }

    /// Records a check: exact equality of expected and actual.
    pub fn check(
        &mut self,
        name: &str,
        provenance: Provenance,
        expected: impl Into<Value>,
        actual: impl Into<Value>,
    ) {
        let expected = expected.into();
        let actual = actual.into();
        if expected != actual {
            self.failures
                .push(format!("{name}: expected {expected}, got {actual}"));
        }
        self.expected.insert(name.to_string(), expected);
        self.provenance
            .insert(name.to_string(), provenance.label().to_string());
        self.results.insert(name.to_string(), actual);
    }

    pub fn finish(self) -> ScenarioReport {
        let verdict = if self.failures.is_empty() {
            "pass"
        } else {
            "fail"
        };
        ScenarioReport {
            scenario: self.scenario,
            inputs: self.inputs,
            results: self.results,
            expected: self.expected,
            provenance: self.provenance,
            verdict: verdict.to_string(),
            elapsed_ms: 0,
            measured_ms: self.start.elapsed().as_millis(),
            failures: self.failures,
            sub_reports: Vec::new(),
        }
    }
}

/// Bundles several scenario reports into one document with an overall
/// verdict, for `verify all`.
pub fn combined_report(name: &str, parts: Vec<ScenarioReport>) -> ScenarioReport {
    let mut results = BTreeMap::new();
    let mut failures = Vec::new();
    let mut measured = 0u128;
    let mut inputs = BTreeMap::new();
    for part in &parts {
        results.insert(
            part.scenario.clone(),
            serde_json::to_value(part).expect("report serialization cannot fail"),
        );
        measured += part.measured_ms;
        for f in &part.failures {
            failures.push(format!("{}: {f}", part.scenario));
        }
        inputs.insert(
            part.scenario.clone(),
            Value::Object(part.inputs.clone().into_iter().collect()),
        );
    }
    let verdict = if failures.is_empty() { "pass" } else { "fail" };
    ScenarioReport {
        scenario: name.to_string(),
        inputs,
        results,
        expected: BTreeMap::new(),
        provenance: BTreeMap::new(),
        verdict: verdict.to_string(),
        elapsed_ms: 0,
        measured_ms: measured,
        failures,
        sub_reports: parts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_follow_checks() {
        let mut r = Recorder::new("demo");
        r.check("a", Provenance::Paper, 1, 1);
        r.check("b", Provenance::Derived, true, true);
        let report = r.finish();
        assert!(report.passed());
        assert_eq!(report.elapsed_ms, 0);

        let mut r = Recorder::new("demo");
        r.check("a", Provenance::Paper, 1, 2);
        let report = r.finish();
        assert!(!report.passed());
        assert_eq!(report.failures.len(), 1);
    }

    #[test]
    fn json_shape_is_stable() {
        let mut r = Recorder::new("demo");
        r.input("m", 3);
        r.check(
            "dims",
            Provenance::Paper,
            serde_json::json!([1, 1]),
            serde_json::json!([1, 1]),
        );
        r.info("note", "extra");
        let report = r.finish();
        let doc: Value = serde_json::from_str(&report.to_json()).unwrap();
        for key in [
            "scenario",
            "inputs",
            "results",
            "expected",
            "provenance",
            "verdict",
            "elapsed_ms",
        ] {
            assert!(doc.get(key).is_some(), "missing {key}");
        }
        assert_eq!(doc["verdict"], "pass");
        assert_eq!(doc["provenance"]["dims"], "paper");
    }
}
