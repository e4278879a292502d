use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::rational::{self, Rational};

/// Outcome of one named sub-claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub name: String,
    pub pass: bool,
}

/// Machine-readable result of a check. Rationals appear as `"a/b"` strings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub pass: bool,
    pub claims: Vec<Claim>,
    pub witnesses: Vec<Value>,
    pub values: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<Report>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Report {
        Report {
            check: check.into(),
            params: BTreeMap::new(),
            pass: true,
            claims: Vec::new(),
            witnesses: Vec::new(),
            values: BTreeMap::new(),
            reports: Vec::new(),
        }
    }

    pub fn param(&mut self, name: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(name.into(), value.into());
        self
    }

    pub fn value(&mut self, name: &str, value: &Rational) -> &mut Self {
        self.values.insert(name.into(), rational::format_rational(value));
        self
    }

    pub fn claim(&mut self, name: &str, pass: bool) -> &mut Self {
        self.claims.push(Claim {
            name: name.into(),
            pass,
        });
        self.pass &= pass;
        self
    }

    pub fn witness(&mut self, w: Value) -> &mut Self {
        self.witnesses.push(w);
        self
    }

    /// Attaches a child report; its verdict becomes a claim named after it.
    pub fn child(&mut self, name: &str, report: Report) -> &mut Self {
        self.claim(name, report.pass);
        self.reports.push(report);
        self
    }

    pub fn failed_claims(&self) -> Vec<&str> {
        self.claims.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
