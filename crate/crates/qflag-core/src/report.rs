//! Structured pass/fail reports for the verification suites.

use serde::Serialize;

/// One offending entry of a failed identity.
#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub i: usize,
    pub j: usize,
    pub row: String,
    pub col: String,
    pub lhs: String,
    pub rhs: String,
}

/// One family of checks inside a suite (e.g. "commutation", "closedness").
#[derive(Debug, Clone, Serialize)]
pub struct Family {
    pub name: String,
    pub pass: bool,
    pub cases: usize,
}

/// Result of a verification suite. `pass` holds exactly when every family
/// passed and no failure entries were recorded.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub pass: bool,
    pub conventions: Vec<String>,
    pub families: Vec<Family>,
    pub failures: Vec<Failure>,
}

/// Convention notes attached to reports whose content depends on them.
pub const CONVENTION_QUANTUM_MONOMIAL: &str =
    "quantum Chevalley terms carry q^(coroot of alpha) = q_1^{m_1}*...*q_l^{m_l}";
pub const CONVENTION_MULTIPLIER_YK: &str =
    "presentation multiplication operators act by the fundamental weight y_k = -(x_1+...+x_k)";

impl VerifyReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerifyReport {
            suite: suite.into(),
            pass: true,
            conventions: Vec::new(),
            families: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn with_conventions(mut self, notes: &[&str]) -> Self {
        self.conventions = notes.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn add_family(&mut self, name: impl Into<String>, pass: bool, cases: usize) {
        if !pass {
            self.pass = false;
        }
        self.families.push(Family {
            name: name.into(),
            pass,
            cases,
        });
    }

    pub fn add_failure(&mut self, f: Failure) {
        self.pass = false;
        self.failures.push(f);
    }

    /// JSON rendering with the versioned schema tag.
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serialization cannot fail");
        v.as_object_mut()
            .unwrap()
            .insert("schema".into(), serde_json::json!("qflag/1"));
        v
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "suite {}: {}",
            self.suite,
            if self.pass { "pass" } else { "FAIL" }
        )?;
        for fam in &self.families {
            writeln!(
                f,
                "  {} [{} cases]: {}",
                fam.name,
                fam.cases,
                if fam.pass { "pass" } else { "FAIL" }
            )?;
        }
        for fail in &self.failures {
            writeln!(
                f,
                "  mismatch at (i={}, j={}) entry ({}, {}): lhs = {}, rhs = {}",
                fail.i, fail.j, fail.row, fail.col, fail.lhs, fail.rhs
            )?;
        }
        Ok(())
    }
}
