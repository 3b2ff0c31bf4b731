//! Pass/fail reports produced by the checkers.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub name: String,
    pub items: Vec<CheckItem>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Report { name: name.into(), items: Vec::new() }
    }

    pub fn pass(&mut self, label: impl Into<String>) {
        self.items.push(CheckItem { label: label.into(), passed: true, witness: None });
    }

    pub fn fail(&mut self, label: impl Into<String>, witness: impl Into<String>) {
        self.items.push(CheckItem { label: label.into(), passed: false, witness: Some(witness.into()) });
    }

    pub fn record(&mut self, label: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(label);
        } else {
            self.fail(label, witness());
        }
    }

    pub fn merge(&mut self, other: Report) {
        let prefix = other.name.clone();
        for mut it in other.items {
            if !prefix.is_empty() {
                it.label = format!("{}: {}", prefix, it.label);
            }
            self.items.push(it);
        }
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.failures().next()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bad = self.failures().count();
        writeln!(f, "{}: {} checks, {} failed", self.name, self.items.len(), bad)?;
        for it in self.failures() {
            writeln!(f, "  FAIL {}: {}", it.label, it.witness.as_deref().unwrap_or(""))?;
        }
        Ok(())
    }
}
