use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

/// Outcome of a verification routine.
///
/// `residuals` are the quantities compared against `tolerance_used`; a
/// `Pass` verdict produced by [`AnalysisReport::from_residuals`] guarantees
/// every residual is at most the tolerance. `metrics` carries informational
/// values (bounds, singular values, counts) that are not subject to that rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub verdict: Verdict,
    pub residuals: BTreeMap<String, f64>,
    #[serde(default)]
    pub metrics: BTreeMap<String, f64>,
    pub tolerance_used: f64,
    pub notes: String,
}

impl AnalysisReport {
    pub fn new(verdict: Verdict, tolerance: f64) -> Self {
        Self {
            verdict,
            residuals: BTreeMap::new(),
            metrics: BTreeMap::new(),
            tolerance_used: tolerance,
            notes: String::new(),
        }
    }

    /// Pass iff every residual is finite and at most `tolerance`.
    pub fn from_residuals<I, K>(residuals: I, tolerance: f64) -> Self
    where
        I: IntoIterator<Item = (K, f64)>,
        K: Into<String>,
    {
        let residuals: BTreeMap<String, f64> =
            residuals.into_iter().map(|(k, v)| (k.into(), v)).collect();
        let ok = residuals.values().all(|r| r.is_finite() && *r <= tolerance);
        Self {
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            residuals,
            metrics: BTreeMap::new(),
            tolerance_used: tolerance,
            notes: String::new(),
        }
    }

    pub fn with_metric(mut self, name: impl Into<String>, value: f64) -> Self {
        self.metrics.insert(name.into(), value);
        self
    }

    pub fn with_note(mut self, note: impl AsRef<str>) -> Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(note.as_ref());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.residuals.get(name).copied()
    }

    pub fn metric(&self, name: &str) -> Option<f64> {
        self.metrics.get(name).copied()
    }

    /// Largest residual, 0 for a report without residuals.
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().copied().fold(0.0, f64::max)
    }

    /// Checks the pass-implies-small-residuals rule.
    pub fn is_consistent(&self) -> bool {
        self.verdict != Verdict::Pass
            || self
                .residuals
                .values()
                .all(|r| r.is_finite() && *r <= self.tolerance_used)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_requires_all_residuals_within_tolerance() {
        let r = AnalysisReport::from_residuals([("a", 1e-12), ("b", 1e-11)], 1e-10);
        assert!(r.passed());
        assert!(r.is_consistent());
        let r = AnalysisReport::from_residuals([("a", 1e-12), ("b", 1e-9)], 1e-10);
        assert_eq!(r.verdict, Verdict::Fail);
        let r = AnalysisReport::from_residuals([("nan", f64::NAN)], 1e-10);
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn serializes_lowercase_verdict() {
        let r = AnalysisReport::new(Verdict::Undecided, 1e-10);
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"undecided\""));
    }
}
