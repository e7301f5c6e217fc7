//! Verdicts with certificates or counterexamples.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Refused,
}

/// The instantiation of a failed implication, keyed by symbol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub algebras: Vec<String>,
    pub bindings: BTreeMap<String, Value>,
}

impl Counterexample {
    pub fn new<I, S>(algebras: I) -> Counterexample
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Counterexample {
            algebras: algebras.into_iter().map(Into::into).collect(),
            bindings: BTreeMap::new(),
        }
    }

    pub fn bind(mut self, symbol: &str, value: impl Serialize) -> Counterexample {
        self.bindings.insert(
            symbol.to_string(),
            serde_json::to_value(value).expect("bindings serialize"),
        );
        self
    }

    pub fn get<T: serde::de::DeserializeOwned>(&self, symbol: &str) -> Option<T> {
        self.bindings
            .get(symbol)
            .and_then(|v| serde_json::from_value(v.clone()).ok())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Refusal {
    pub cap: String,
    pub required: u64,
    pub limit: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    pub subjects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub catalog: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refusal: Option<Refusal>,
    #[serde(default)]
    pub stats: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new<I, S>(check: &str, subjects: I) -> CheckReport
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        CheckReport {
            check: check.to_string(),
            verdict: Verdict::Pass,
            subjects: subjects.into_iter().map(Into::into).collect(),
            catalog: Vec::new(),
            witness: None,
            counterexample: None,
            refusal: None,
            stats: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn refused(&self) -> bool {
        self.verdict == Verdict::Refused
    }

    pub fn fail(mut self, counterexample: Counterexample) -> CheckReport {
        self.verdict = Verdict::Fail;
        self.counterexample = Some(counterexample);
        self
    }

    pub fn with_witness(mut self, witness: impl Serialize) -> CheckReport {
        self.witness = Some(serde_json::to_value(witness).expect("witness serializes"));
        self
    }

    pub fn stat(mut self, key: &str, value: u64) -> CheckReport {
        self.stats.insert(key.to_string(), value);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> CheckReport {
        self.notes.push(note.into());
        self
    }

    pub fn with_catalog(mut self, names: Vec<String>) -> CheckReport {
        self.catalog = names;
        self
    }

    /// A refusal for cap errors; other errors are returned unchanged.
    pub fn refuse(self, err: Error) -> Result<CheckReport, Error> {
        match err {
            Error::CapExceeded { cap, required, limit } => Ok(CheckReport {
                verdict: Verdict::Refused,
                refusal: Some(Refusal {
                    cap: cap.to_string(),
                    required,
                    limit,
                }),
                ..self
            }),
            other => Err(other),
        }
    }
}

/// JSON with object keys sorted and no insignificant whitespace, so equal
/// values always serialize to identical bytes.
pub fn canonical_json(value: &impl Serialize) -> String {
    let value = serde_json::to_value(value).expect("reports serialize");
    // `Value` objects are BTreeMaps, hence sorted on output
    serde_json::to_string(&value).expect("values serialize")
}
