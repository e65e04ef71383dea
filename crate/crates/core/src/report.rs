//! Machine-readable verification reports (`report.v1`).

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA: &str = "report.v1";

/// Ordered from strongest to weakest; combining checks keeps the weakest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exact,
    ExactAbelianOnly,
    NotChecked,
    ObstructionFound,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Exact => "exact",
            Verdict::ExactAbelianOnly => "exact-abelian-only",
            Verdict::NotChecked => "not-checked",
            Verdict::ObstructionFound => "obstruction-found",
        }
    }

    pub fn passed(self) -> bool {
        matches!(self, Verdict::Exact | Verdict::ExactAbelianOnly)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub witness: serde_json::Value,
}

impl Check {
    pub fn new(name: &str, verdict: Verdict, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), verdict, detail: detail.into(), witness: serde_json::Value::Null }
    }

    pub fn with_witness(mut self, witness: serde_json::Value) -> Self {
        self.witness = witness;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub subject: String,
    pub overall: Verdict,
    /// All abelianized checks passed.
    pub abelian: bool,
    /// No homomorphism-count obstruction was found.
    pub hom_signature: bool,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "std::collections::BTreeMap::is_empty")]
    pub facts: std::collections::BTreeMap<String, String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            schema: REPORT_SCHEMA.to_string(),
            subject: subject.into(),
            overall: Verdict::Exact,
            abelian: true,
            hom_signature: true,
            checks: Vec::new(),
            facts: Default::default(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.overall = self.overall.max(check.verdict);
        self.checks.push(check);
    }

    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.insert(key.to_string(), value.to_string());
    }

    pub fn passed(&self) -> bool {
        self.overall.passed()
    }

    /// `exact-abelian-only: pass; hom-signature: pass` style summary.
    pub fn summary(&self) -> String {
        if self.overall == Verdict::NotChecked {
            return "not-checked".into();
        }
        let mark = |b: bool| if b { "pass" } else { "fail" };
        let level = if self.overall == Verdict::Exact { "exact" } else { "exact-abelian-only" };
        format!("{level}: {}; hom-signature: {}", mark(self.abelian), mark(self.hom_signature))
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{}: {}", self.subject, self.overall)?;
        for (k, v) in &self.facts {
            writeln!(f, "  {k} = {v}")?;
        }
        for c in &self.checks {
            writeln!(f, "  [{}] {}: {}", c.verdict, c.name, c.detail)?;
        }
        write!(f, "{}", self.summary())
    }
}
