//! Named pass/fail checks with counterexample witnesses.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linmap::{LinMap, SparseVec};
use crate::space::Space;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub basis: String,
    pub coeff: String,
}

/// The first domain basis vector on which two maps disagree, with both images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub input: String,
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub title: String,
    pub entries: Vec<CheckEntry>,
}

fn terms(space: &Space, v: &SparseVec) -> Vec<Term> {
    let f = space.field();
    v.iter()
        .map(|(i, c)| Term { basis: space.label(*i as usize), coeff: f.display_scalar(c) })
        .collect()
}

fn render_terms(ts: &[Term]) -> String {
    if ts.is_empty() {
        "0".to_string()
    } else {
        ts.iter().map(|t| format!("{}·{}", t.coeff, t.basis)).collect::<Vec<_>>().join(" + ")
    }
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        CheckReport { title: title.into(), entries: Vec::new() }
    }

    /// Overall verdict: every entry passes.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn entry(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Outcome of a named check; `None` when it was not run.
    pub fn outcome(&self, name: &str) -> Option<bool> {
        self.entry(name).map(|e| e.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.passed)
    }

    pub fn failure_summary(&self) -> String {
        let names: Vec<&str> = self.failures().map(|e| e.name.as_str()).collect();
        if names.is_empty() {
            format!("{}: all checks pass", self.title)
        } else {
            format!("{}: failed {}", self.title, names.join(", "))
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) -> bool {
        self.entries.push(CheckEntry { name: name.into(), passed, witness: None, detail });
        passed
    }

    /// Records whether `lhs == rhs` exactly; on failure, stores the first
    /// differing column as witness.
    pub fn check_maps(&mut self, name: impl Into<String>, lhs: &LinMap, rhs: &LinMap) -> bool {
        let name = name.into();
        if lhs.domain() != rhs.domain() || lhs.codomain() != rhs.codomain() {
            let detail = format!(
                "shape mismatch: {} -> {} vs {} -> {}",
                lhs.domain().name(),
                lhs.codomain().name(),
                rhs.domain().name(),
                rhs.codomain().name()
            );
            return self.check(name, false, Some(detail));
        }
        match lhs.first_difference(rhs) {
            None => self.check(name, true, None),
            Some(j) => {
                let witness = Witness {
                    input: lhs.domain().label(j),
                    lhs: terms(lhs.codomain(), lhs.column(j)),
                    rhs: terms(rhs.codomain(), rhs.column(j)),
                };
                self.entries.push(CheckEntry { name, passed: false, witness: Some(witness), detail: None });
                false
            }
        }
    }

    /// Records a fallible check: errors become failures with the message as detail.
    pub fn check_result<T>(&mut self, name: impl Into<String>, r: &crate::Result<T>) -> bool {
        match r {
            Ok(_) => self.check(name, true, None),
            Err(e) => self.check(name, false, Some(e.to_string())),
        }
    }

    /// Appends all entries of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: &CheckReport) {
        for e in &other.entries {
            let mut e = e.clone();
            if !prefix.is_empty() {
                e.name = format!("{prefix}/{}", e.name);
            }
            self.entries.push(e);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check: `PASS name` / `FAIL name` followed by the witness.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.title)?;
        for e in &self.entries {
            writeln!(f, "{} {}", if e.passed { "PASS" } else { "FAIL" }, e.name)?;
            if let Some(d) = &e.detail {
                writeln!(f, "     {d}")?;
            }
            if let Some(w) = &e.witness {
                writeln!(f, "     at basis vector {}", w.input)?;
                writeln!(f, "       lhs = {}", render_terms(&w.lhs))?;
                writeln!(f, "       rhs = {}", render_terms(&w.rhs))?;
            }
        }
        writeln!(f, "verdict: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}
