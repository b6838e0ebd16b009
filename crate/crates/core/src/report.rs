//! Flat `key=value` verification reports.

use std::fmt::Write as _;

/// Tolerances used by the verification suites. Each can be overridden from a
/// config file under the `tol.` prefix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub identity_rel: f64,
    pub identity3_rel: f64,
    pub identity1_routes: f64,
    pub cos_theta: f64,
    pub handy: f64,
    pub det_finite_diff: f64,
    pub det_left_right: f64,
    pub kernel_alignment: f64,
    pub positivity_at_track: f64,
    pub dot_product: f64,
    pub phase_gradient: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity_rel: 1e-8,
            identity3_rel: 1e-14,
            identity1_routes: 1e-9,
            cos_theta: 1e-9,
            handy: 1e-10,
            det_finite_diff: 1e-6,
            det_left_right: 1e-10,
            kernel_alignment: 1e-8,
            positivity_at_track: 1e-12,
            dot_product: 1e-12,
            phase_gradient: 1e-6,
        }
    }
}

impl Tolerances {
    /// `(config key, value)` pairs in a fixed order.
    pub fn entries(&self) -> [(&'static str, f64); 11] {
        [
            ("identity_rel", self.identity_rel),
            ("identity3_rel", self.identity3_rel),
            ("identity1_routes", self.identity1_routes),
            ("cos_theta", self.cos_theta),
            ("handy", self.handy),
            ("det_finite_diff", self.det_finite_diff),
            ("det_left_right", self.det_left_right),
            ("kernel_alignment", self.kernel_alignment),
            ("positivity_at_track", self.positivity_at_track),
            ("dot_product", self.dot_product),
            ("phase_gradient", self.phase_gradient),
        ]
    }

    pub fn get_mut(&mut self, key: &str) -> Option<&mut f64> {
        Some(match key {
            "identity_rel" => &mut self.identity_rel,
            "identity3_rel" => &mut self.identity3_rel,
            "identity1_routes" => &mut self.identity1_routes,
            "cos_theta" => &mut self.cos_theta,
            "handy" => &mut self.handy,
            "det_finite_diff" => &mut self.det_finite_diff,
            "det_left_right" => &mut self.det_left_right,
            "kernel_alignment" => &mut self.kernel_alignment,
            "positivity_at_track" => &mut self.positivity_at_track,
            "dot_product" => &mut self.dot_product,
            "phase_gradient" => &mut self.phase_gradient,
            _ => return None,
        })
    }
}

/// How a measured value is compared against its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    /// Pass when `value <= tolerance`.
    AtMost,
    /// Pass when `value > tolerance`.
    Above,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub suite: String,
    /// Descriptive fields (config hash, seed, sample counts) in insertion order.
    pub meta: Vec<(String, String)>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            ..Self::default()
        }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.meta.push((key.into(), value.to_string()));
        self
    }

    /// Records `value <= tolerance`. NaN fails.
    pub fn at_most(&mut self, name: impl Into<String>, value: f64, tolerance: f64) -> &mut Self {
        self.push(
            name.into(),
            value,
            tolerance,
            Comparison::AtMost,
            value <= tolerance,
        )
    }

    /// Records `value > bound`. NaN fails.
    pub fn above(&mut self, name: impl Into<String>, value: f64, bound: f64) -> &mut Self {
        self.push(name.into(), value, bound, Comparison::Above, value > bound)
    }

    fn push(
        &mut self,
        name: String,
        value: f64,
        tolerance: f64,
        comparison: Comparison,
        passed: bool,
    ) -> &mut Self {
        self.checks.push(Check {
            name,
            value,
            tolerance,
            comparison,
            passed,
        });
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.meta.extend(other.meta);
        self.checks.extend(other.checks);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "suite={}", self.suite).unwrap();
        for (k, v) in &self.meta {
            writeln!(out, "{k}={v}").unwrap();
        }
        for c in &self.checks {
            let op = match c.comparison {
                Comparison::AtMost => "le",
                Comparison::Above => "gt",
            };
            writeln!(out, "{}.value={:e}", c.name, c.value).unwrap();
            writeln!(out, "{}.{op}={:e}", c.name, c.tolerance).unwrap();
            writeln!(out, "{}.pass={}", c.name, c.passed).unwrap();
        }
        writeln!(out, "pass={}", self.passed()).unwrap();
        out
    }
}

/// Reads a rendered report back into `(key, value)` pairs.
pub fn parse_report(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_verdict() {
        let mut r = VerificationReport::new("demo");
        r.meta("seed", 7)
            .at_most("a", 1e-9, 1e-8)
            .above("b", 0.5, 0.0);
        assert!(r.passed());
        let text = r.render();
        assert!(text.starts_with("suite=demo\nseed=7\n"));
        assert!(text.contains("a.value=1e-9\n"));
        assert!(text.contains("a.le=1e-8\n"));
        assert!(text.ends_with("pass=true\n"));
        r.at_most("c", f64::NAN, 1.0);
        assert!(!r.passed());
        let kv = parse_report(&r.render());
        assert!(kv.contains(&("c.pass".into(), "false".into())));
    }

    #[test]
    fn tolerance_keys_roundtrip() {
        let mut t = Tolerances::default();
        for (k, v) in Tolerances::default().entries() {
            assert_eq!(*t.get_mut(k).unwrap(), v);
        }
        assert!(t.get_mut("nope").is_none());
    }
}
