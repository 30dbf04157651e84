use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    /// Upper bound for `value`; `None` for recorded-only quantities.
    pub tolerance: Option<f64>,
}

impl Metric {
    pub fn within(&self) -> bool {
        match self.tolerance {
            None => true,
            Some(t) => self.value <= t,
        }
    }
}

/// Where a check went wrong.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub parameters: Value,
    pub point: Option<Vec<f64>>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub suite_id: String,
    pub parameters: Value,
    pub pass: bool,
    pub metrics: Vec<Metric>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
    pub runtime_seconds: f64,
}

impl ExperimentReport {
    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|m| m.name == name).map(|m| m.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Zero the runtime so that reports compare byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.runtime_seconds = 0.0;
        self
    }
}

pub(crate) struct ReportBuilder {
    suite_id: String,
    parameters: Value,
    metrics: Vec<Metric>,
    failures: Vec<Failure>,
    start: Instant,
}

impl ReportBuilder {
    pub(crate) fn new(suite_id: &str, parameters: Value) -> Self {
        Self {
            suite_id: suite_id.to_string(),
            parameters,
            metrics: Vec::new(),
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    /// Adds a checked metric; a violation records a failure at `point`.
    pub(crate) fn check(&mut self, name: impl Into<String>, value: f64, tolerance: f64, parameters: Value, point: Option<Vec<f64>>) {
        let m = Metric {
            name: name.into(),
            value,
            tolerance: Some(tolerance),
        };
        if !m.within() {
            self.failures.push(Failure {
                parameters,
                point,
                detail: format!("{} = {value:e} exceeds {tolerance:e}", m.name),
            });
        }
        self.metrics.push(m);
    }

    pub(crate) fn record(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.push(Metric {
            name: name.into(),
            value,
            tolerance: None,
        });
    }

    pub(crate) fn fail(&mut self, parameters: Value, point: Option<Vec<f64>>, detail: impl Into<String>) {
        self.failures.push(Failure {
            parameters,
            point,
            detail: detail.into(),
        });
    }

    pub(crate) fn finish(self) -> ExperimentReport {
        let pass = self.failures.is_empty() && self.metrics.iter().all(Metric::within);
        ExperimentReport {
            suite_id: self.suite_id,
            parameters: self.parameters,
            pass,
            metrics: self.metrics,
            failures: self.failures,
            runtime_seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}
