//! Verification reports: named residual checks with max/mean summaries.

use serde::Serialize;

/// One check: the largest and mean residual seen, the tolerance it was
/// held against, and the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    /// Summarizes a residual sample; passes iff the maximum stays within
    /// the tolerance.
    pub fn from_residuals(name: impl Into<String>, residuals: &[f64], tolerance: f64) -> Self {
        let max = residuals.iter().fold(0.0_f64, |m, r| m.max(r.abs()));
        let mean = if residuals.is_empty() {
            0.0
        } else {
            residuals.iter().map(|r| r.abs()).sum::<f64>() / residuals.len() as f64
        };
        CheckResult {
            name: name.into(),
            max_residual: max,
            mean_residual: mean,
            tolerance,
            passed: max <= tolerance,
        }
    }

    /// A single-value check.
    pub fn from_value(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self::from_residuals(name, &[value], tolerance)
    }
}

/// A batch of checks; the overall verdict is the conjunction.
#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: CheckResult) {
        self.checks.push(check);
    }

    pub fn push_residuals(&mut self, name: impl Into<String>, residuals: &[f64], tol: f64) {
        self.push(CheckResult::from_residuals(name, residuals, tol));
    }

    /// Merges another report, prefixing its check names.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// One line per check plus an overall verdict, machine-parsable.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            out.push_str(&format!(
                "{}  {:width$}  max={:<12.5e} mean={:<12.5e} tol={:.1e}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.max_residual,
                c.mean_residual,
                c.tolerance,
            ));
        }
        out.push_str(&format!(
            "OVERALL: {} ({} checks)\n",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_is_the_conjunction() {
        let mut r = VerificationReport::new();
        r.push_residuals("a", &[1e-12, -3e-11], 1e-9);
        assert!(r.passed());
        r.push_residuals("b", &[2e-9], 1e-9);
        assert!(!r.passed());
        assert!(r.render_text().contains("FAIL  b"));
        assert!(r.render_text().contains("OVERALL: FAIL"));
    }

    #[test]
    fn summaries() {
        let c = CheckResult::from_residuals("x", &[1.0, -3.0], 5.0);
        assert_eq!(c.max_residual, 3.0);
        assert_eq!(c.mean_residual, 2.0);
        assert!(c.passed);
    }

    #[test]
    fn json_is_well_formed() {
        let mut r = VerificationReport::new();
        r.push_residuals("a", &[0.0], 1.0);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][0]["name"], "a");
    }
}
