//! Output records and their two renderings.

use std::fmt::Write as _;

use lcacalc_core::homext::{Citation, TraceStep};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceEntry {
    pub rule: String,
    pub subject: String,
    pub detail: String,
}

impl From<&TraceStep> for TraceEntry {
    fn from(t: &TraceStep) -> Self {
        TraceEntry { rule: t.rule.clone(), subject: t.pair.clone(), detail: t.detail.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CitationEntry {
    pub id: String,
    pub provenance: String,
}

impl From<&Citation> for CitationEntry {
    fn from(c: &Citation) -> Self {
        CitationEntry { id: c.id.clone(), provenance: c.provenance.to_string() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Expr,
    Cover,
    Boolean,
    Unresolved,
    PropertyVector,
    Resolution,
    Report,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Expr => "expr",
            Kind::Cover => "cover",
            Kind::Boolean => "boolean",
            Kind::Unresolved => "unresolved",
            Kind::PropertyVector => "property-vector",
            Kind::Resolution => "resolution",
            Kind::Report => "report",
        }
    }
}

/// One answered query. `value` is a string for group-valued kinds and a
/// JSON object for the composite ones.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub query: String,
    pub kind: Kind,
    pub value: Value,
    /// Unicode rendering of a group-valued answer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub display: Option<String>,
    pub trace: Vec<TraceEntry>,
    pub citations: Vec<CitationEntry>,
}

impl Record {
    pub fn new(query: String, kind: Kind, value: impl Into<Value>) -> Self {
        Record { query, kind, value: value.into(), display: None, trace: Vec::new(), citations: Vec::new() }
    }

    pub fn structured(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "query: {}", self.query);
        let _ = writeln!(out, "kind: {}", self.kind.as_str());
        match &self.value {
            Value::String(s) => {
                let _ = writeln!(out, "value: {s}");
            }
            other => {
                let _ = writeln!(out, "value:");
                write_value(&mut out, other, 1);
            }
        }
        if let Some(d) = &self.display {
            let _ = writeln!(out, "display: {d}");
        }
        if !self.trace.is_empty() {
            let _ = writeln!(out, "trace:");
            for t in &self.trace {
                let _ = writeln!(out, "  {}  {}  {}", t.rule, t.subject, t.detail);
            }
        }
        if !self.citations.is_empty() {
            let _ = writeln!(out, "citations:");
            for c in &self.citations {
                let _ = writeln!(out, "  {} [{}]", c.id, c.provenance);
            }
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "no".into(),
        other => other.to_string(),
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Array(a) if a.is_empty() => {
                        let _ = writeln!(out, "{pad}{k}: none");
                    }
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        write_value(out, x, depth + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match x {
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{pad}-");
                        write_value(out, x, depth + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}- {}", scalar(x));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}
