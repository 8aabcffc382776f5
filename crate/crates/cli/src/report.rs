use std::fmt::Write;

use serde_json::{json, Map, Value};

use relidem_core::enumerate::Classification;
use relidem_core::LawReport;

/// One entity's results with a fixed key order.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub entity: String,
    pub kind: String,
    pub laws: Vec<LawLine>,
    pub flags: Map<String, Value>,
    pub witnesses: Map<String, Value>,
    pub timing_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawLine {
    pub law: String,
    pub ok: bool,
    pub witness: Option<String>,
}

impl Report {
    pub fn new(entity: &str, kind: &str) -> Self {
        Report {
            entity: entity.to_string(),
            kind: kind.to_string(),
            laws: Vec::new(),
            flags: Map::new(),
            witnesses: Map::new(),
            timing_ms: None,
        }
    }

    pub fn with_laws(mut self, laws: &LawReport) -> Self {
        self.laws.extend(laws.summary().into_iter().map(|(law, ok, w)| LawLine {
            law: law.to_string(),
            ok,
            witness: w.map(str::to_string),
        }));
        self
    }

    pub fn flag(&mut self, key: &str, value: impl Into<Value>) {
        self.flags.insert(key.to_string(), value.into());
    }

    pub fn ok(&self) -> bool {
        self.laws.iter().all(|l| l.ok)
    }

    pub fn to_json(&self) -> Value {
        let laws: Vec<Value> = self
            .laws
            .iter()
            .map(|l| {
                let mut m = Map::new();
                m.insert("law".into(), json!(l.law));
                m.insert("ok".into(), json!(l.ok));
                if let Some(w) = &l.witness {
                    m.insert("witness".into(), json!(w));
                }
                Value::Object(m)
            })
            .collect();
        let mut m = Map::new();
        m.insert("entity".into(), json!(self.entity));
        m.insert("kind".into(), json!(self.kind));
        m.insert("laws".into(), Value::Array(laws));
        m.insert("flags".into(), Value::Object(self.flags.clone()));
        m.insert("witnesses".into(), Value::Object(self.witnesses.clone()));
        if let Some(t) = self.timing_ms {
            m.insert("timing_ms".into(), json!(t));
        }
        Value::Object(m)
    }

    /// Plain-text rendering: one `key: value` line per flag, nested objects
    /// flattened with dotted keys.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.kind, self.entity);
        for l in &self.laws {
            match &l.witness {
                Some(w) => {
                    let _ = writeln!(out, "  law {}: FAIL at {w}", l.law);
                }
                None => {
                    let _ = writeln!(out, "  law {}: ok", l.law);
                }
            }
        }
        fn flat(out: &mut String, prefix: &str, m: &Map<String, Value>) {
            for (k, v) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                match v {
                    Value::Object(inner) => flat(out, &key, inner),
                    Value::String(s) => {
                        let _ = writeln!(out, "  {key}: {s}");
                    }
                    other => {
                        let _ = writeln!(out, "  {key}: {other}");
                    }
                }
            }
        }
        flat(&mut out, "", &self.flags);
        if !self.witnesses.is_empty() {
            out.push_str("  witnesses:\n");
            flat(&mut out, "", &self.witnesses);
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "  timing_ms: {t:.1}");
        }
        out
    }
}

/// Flags section for a classified relative monad.
pub fn classification_flags(c: &Classification) -> Map<String, Value> {
    let f = &c.flags;
    let mut m = Map::new();
    m.insert("idempotent".into(), json!(f.idempotent));
    m.insert("algebraically_idempotent".into(), json!(f.algebraically_idempotent));
    m.insert("dense_root".into(), json!(f.dense_root));
    m.insert("identity_root".into(), json!(f.identity_root));
    m.insert("free_algebras_idempotent".into(), json!(f.free_algebras_idempotent));
    m.insert("kleisli_to_image_fully_faithful".into(), json!(f.kleisli_to_image_fully_faithful));
    m.insert("kleisli_j_reflective".into(), json!(f.kleisli_j_reflective));
    m.insert("forgetful_fully_faithful".into(), json!(f.forgetful_fully_faithful));
    m.insert("kleisli_equiv_algebras".into(), json!(f.kleisli_equiv_algebras));
    m.insert("algebras".into(), json!(f.algebras));
    m.insert("idempotent_algebras".into(), json!(f.idempotent_algebras));
    for (carrier, n) in &f.algebras_per_carrier {
        m.insert(format!("algebras_on_{carrier}"), json!(n));
    }
    m.insert("algebra_morphisms".into(), json!(f.algebra_morphisms));
    m.insert("kleisli_objects".into(), json!(f.kleisli_objects));
    m.insert("kleisli_morphisms".into(), json!(f.kleisli_morphisms));
    let conditions: Map<String, Value> = c.conditions.iter().map(|c| (c.label.to_string(), json!(c.holds))).collect();
    m.insert("conditions".into(), Value::Object(conditions));
    m
}

pub fn classification_witnesses(c: &Classification) -> Map<String, Value> {
    c.witnesses.iter().map(|(k, v)| (k.clone(), json!(v))).collect()
}
