//! Verification reports: named integers plus identity chains with verdicts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ENGINE_VERSION;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub lhs_label: String,
    pub lhs: i64,
    pub rhs_label: String,
    pub rhs: i64,
    pub holds: bool,
}

/// A sequence of equalities `a = b = c ...`, one [`Link`] per adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chain {
    pub name: String,
    pub links: Vec<Link>,
}

impl Chain {
    pub fn new(name: impl Into<String>) -> Self {
        Chain { name: name.into(), links: Vec::new() }
    }

    /// Chain through every term in order.
    pub fn through(name: impl Into<String>, terms: &[(&str, i64)]) -> Self {
        let mut c = Chain::new(name);
        for w in terms.windows(2) {
            c = c.link(w[0].0, w[0].1, w[1].0, w[1].1);
        }
        c
    }

    pub fn link(mut self, lhs_label: impl Into<String>, lhs: i64, rhs_label: impl Into<String>, rhs: i64) -> Self {
        self.links.push(Link {
            lhs_label: lhs_label.into(),
            lhs,
            rhs_label: rhs_label.into(),
            rhs,
            holds: lhs == rhs,
        });
        self
    }

    pub fn holds(&self) -> bool {
        self.links.iter().all(|l| l.holds)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub engine_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub integers: BTreeMap<String, i64>,
    pub chains: Vec<Chain>,
    /// Boolean checks that are not integer equalities.
    pub checks: BTreeMap<String, bool>,
    pub pass: bool,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(command: impl Into<String>) -> Self {
        VerificationReport {
            engine_version: ENGINE_VERSION.to_string(),
            command: command.into(),
            inputs: BTreeMap::new(),
            integers: BTreeMap::new(),
            chains: Vec::new(),
            checks: BTreeMap::new(),
            pass: true,
            notes: Vec::new(),
            data: None,
            duration_ms: None,
        }
    }

    pub fn input(mut self, key: &str, v: impl Serialize) -> Self {
        self.inputs.insert(key.to_string(), serde_json::to_value(v).expect("serializable input"));
        self
    }

    pub fn set(&mut self, key: &str, v: i64) {
        self.integers.insert(key.to_string(), v);
    }

    pub fn get(&self, key: &str) -> Option<i64> {
        self.integers.get(key).copied()
    }

    pub fn push_chain(&mut self, c: Chain) {
        self.chains.push(c);
        self.refresh();
    }

    pub fn check(&mut self, key: &str, ok: bool) {
        self.checks.insert(key.to_string(), ok);
        self.refresh();
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Recomputes `pass` from chains and checks.
    pub fn refresh(&mut self) {
        self.pass = self.chains.iter().all(Chain::holds) && self.checks.values().all(|&b| b);
    }

    /// Folds a sub-report in under `prefix`.
    pub fn absorb(&mut self, prefix: &str, other: &VerificationReport) {
        for (k, v) in &other.integers {
            self.integers.insert(format!("{prefix}.{k}"), *v);
        }
        for c in &other.chains {
            let mut c = c.clone();
            c.name = format!("{prefix}.{}", c.name);
            self.chains.push(c);
        }
        for (k, v) in &other.checks {
            self.checks.insert(format!("{prefix}.{k}"), *v);
        }
        for n in &other.notes {
            if !self.notes.contains(n) {
                self.notes.push(n.clone());
            }
        }
        self.refresh();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_tracks_links() {
        let mut r = VerificationReport::new("t");
        r.push_chain(Chain::through("c", &[("a", 3), ("b", 3), ("c", 3)]));
        assert!(r.pass);
        assert_eq!(r.chains[0].links.len(), 2);
        r.push_chain(Chain::new("d").link("x", 1, "y", 2));
        assert!(!r.pass);
        let text = serde_json::to_string(&r).unwrap();
        assert!(!text.contains("duration_ms"));
    }
}
