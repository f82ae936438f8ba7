//! Check reports. Every entry names the identity it checked, so a failure in
//! a log can be traced back to the statement without reading code.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

use crate::exactlin::{nonzeros, Scalar};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    /// The identity or property being checked, in mathematical notation.
    pub paper_ref: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, paper_ref: impl Into<String>, pass: bool, witness: Option<Value>) -> Check {
        Check { name: name.into(), paper_ref: paper_ref.into(), pass, witness: if pass { None } else { witness }, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }
}

/// An ordered list of checks plus computed data (dimensions, ranks, …).
#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report { title: title.into(), ..Default::default() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn check(&mut self, name: &str, paper_ref: &str, pass: bool, witness: Option<Value>) {
        self.push(Check::new(name, paper_ref, pass, witness));
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(value).expect("serializable data"));
    }

    /// Append the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
        for (k, v) in other.data {
            self.data.insert(format!("{prefix}.{k}"), v);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Panics with the failing entries; convenient in tests.
    pub fn assert_pass(&self) {
        let failed: Vec<_> = self.checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{}: failing checks {failed:#?}", self.title);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.title)?;
        for (k, v) in &self.data {
            writeln!(f, "   {k} = {v}")?;
        }
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            write!(f, "   [{mark}] {}  ({})", c.name, c.paper_ref)?;
            if let Some(w) = &c.witness {
                write!(f, "  witness: {w}")?;
            }
            if let Some(n) = &c.note {
                write!(f, "  note: {n}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Sparse JSON form of a coefficient vector: `[[index, "scalar"], …]`.
pub fn element_json(v: &[Scalar]) -> Value {
    Value::Array(
        nonzeros(v)
            .map(|(i, c)| serde_json::json!([i, c.to_string()]))
            .collect(),
    )
}

/// First index where `f` fails, as a JSON witness holding the index and the
/// residual `left - right`.
pub fn first_mismatch<F>(count: usize, mut f: F) -> Option<Value>
where
    F: FnMut(usize) -> (Vec<Scalar>, Vec<Scalar>),
{
    for i in 0..count {
        let (left, right) = f(i);
        if left != right {
            let residual = crate::exactlin::sub(&left, &right);
            return Some(serde_json::json!({ "basis_index": i, "residual": element_json(&residual) }));
        }
    }
    None
}
