//! Structured pass/fail records for verified identities.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One checked identity: a short name, the outcome, and on failure an
/// optional witness payload (an element, matrix, or other JSON value
/// exhibiting the discrepancy).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

/// A verification report: an ordered list of [`CheckEntry`] values.
///
/// Serializes as a bare JSON array of entries.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VerificationReport {
    pub entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport::default()
    }

    /// Records a check with no witness payload.
    pub fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.entries.push(CheckEntry {
            check: name.into(),
            pass,
            witness: None,
        });
    }

    /// Records a check, attaching `witness` when it fails.
    pub fn check_with(&mut self, name: impl Into<String>, pass: bool, witness: Value) {
        self.entries.push(CheckEntry {
            check: name.into(),
            pass,
            witness: if pass { None } else { Some(witness) },
        });
    }

    /// Records a check that always carries a payload (pass or fail), for
    /// checks whose computed values are themselves the point of the report.
    pub fn check_recording(&mut self, name: impl Into<String>, pass: bool, payload: Value) {
        self.entries.push(CheckEntry {
            check: name.into(),
            pass,
            witness: Some(payload),
        });
    }

    /// True when every entry passed.
    pub fn pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    /// Number of recorded checks.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends all entries of `other`, prefixing each check name.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut e in other.entries {
            e.check = format!("{prefix}: {}", e.check);
            self.entries.push(e);
        }
    }

    /// Names of the failing checks.
    pub fn failures(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| !e.pass)
            .map(|e| e.check.as_str())
            .collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let mark = if e.pass { "ok  " } else { "FAIL" };
            write!(f, "{mark} {}", e.check)?;
            if let (false, Some(w)) = (e.pass, &e.witness) {
                write!(f, "  witness: {w}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_round_trip() {
        let mut r = VerificationReport::new();
        r.check("a = a", true);
        r.check_with("b = c", false, serde_json::json!({"lhs": "b", "rhs": "c"}));
        let js = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
        assert!(!r.pass());
        assert_eq!(r.failures(), vec!["b = c"]);
        // passing entries carry no witness in the serialized form
        assert!(js.starts_with('['));
        let v: Value = serde_json::from_str(&js).unwrap();
        assert!(v[0].get("witness").is_none());
        assert!(v[1].get("witness").is_some());
    }
}
