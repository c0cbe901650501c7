use hopfforge::{Check, Classification};
use serde::Serialize;

/// One check as it appears in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckRecord {
    pub check_id: String,
    pub rule: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        CheckRecord {
            check_id: c.id.clone(),
            rule: c.rule.clone(),
            status: c.status.as_str().to_string(),
            witness: c.witness.clone(),
            detail: c.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationRecord {
    pub verdict: String,
    pub window_verified: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub instance: String,
    pub command: String,
    /// Window size, for algebras checked on a window.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    pub checks: Vec<CheckRecord>,
    pub classification: ClassificationRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(instance: &str, command: &str, c: &Classification, extra: &[Check]) -> Self {
        Report {
            instance: instance.to_string(),
            command: command.to_string(),
            window: None,
            checks: c
                .evidence
                .iter()
                .chain(extra)
                .map(CheckRecord::from)
                .collect(),
            classification: ClassificationRecord {
                verdict: c.verdict.as_str().to_string(),
                window_verified: c.window_verified,
                notes: c.notes.clone(),
            },
            expected: None,
            timing_ms: None,
        }
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == "fail")
    }

    pub fn expectation_met(&self) -> bool {
        self.expected
            .as_ref()
            .is_none_or(|e| *e == self.classification.verdict)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("== {} ({})\n", self.instance, self.command);
        if let Some(w) = self.window {
            out.push_str(&format!("window: {w}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("{:<11} {}  {}", c.status, c.check_id, c.rule));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  [witness {w}]"));
            }
            if let Some(d) = &c.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
        let cls = &self.classification;
        out.push_str(&format!(
            "verdict: {}{}\n",
            cls.verdict,
            if cls.window_verified {
                " (window-verified)"
            } else {
                ""
            }
        ));
        for n in &cls.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        if let Some(e) = &self.expected {
            out.push_str(&format!(
                "expected: {e} ({})\n",
                if self.expectation_met() {
                    "met"
                } else {
                    "NOT met"
                }
            ));
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("time: {t} ms\n"));
        }
        out
    }
}
