//! The report document and its two renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use centralic::report::{canonical_json, CheckReport, Verdict};
use centralic::Caps;

use crate::inputs::{InputRecord, Session};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapsRecord {
    pub congruence_carrier: usize,
    pub shifting_carrier: usize,
    pub term_steps: u64,
    pub term_carrier_small: usize,
    pub term_carrier_m4: usize,
}

impl From<&Caps> for CapsRecord {
    fn from(c: &Caps) -> CapsRecord {
        CapsRecord {
            congruence_carrier: c.congruence_carrier,
            shifting_carrier: c.shifting_carrier,
            term_steps: c.term_steps,
            term_carrier_small: c.term_carrier_small,
            term_carrier_m4: c.term_carrier_m4,
        }
    }
}

impl From<CapsRecord> for Caps {
    fn from(c: CapsRecord) -> Caps {
        Caps {
            congruence_carrier: c.congruence_carrier,
            shifting_carrier: c.shifting_carrier,
            term_steps: c.term_steps,
            term_carrier_small: c.term_carrier_small,
            term_carrier_m4: c.term_carrier_m4,
        }
    }
}

/// Everything needed to re-derive a run: the command line, the caps, every
/// algebra involved (inlined by name) and the reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub caps: CapsRecord,
    /// Argument string -> the algebras it resolved to.
    pub inputs: BTreeMap<String, InputRecord>,
    pub algebras: BTreeMap<String, Value>,
    pub reports: Vec<CheckReport>,
    /// Present only under `--timing`; everything else is reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl ReportDocument {
    pub fn new(command: Vec<String>, caps: &Caps, session: Session, reports: Vec<CheckReport>) -> ReportDocument {
        ReportDocument {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            caps: caps.into(),
            inputs: session.inputs,
            algebras: session.algebras,
            reports,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = canonical_json(self);
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            render(r, &mut out);
        }
        if let Some(ms) = self.timing_ms {
            writeln!(out, "time: {ms} ms").unwrap();
        }
        out
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

fn render(r: &CheckReport, out: &mut String) {
    let head = format!("{}({})", r.check, r.subjects.join(", "));
    match r.verdict {
        Verdict::Pass => writeln!(out, "{head}: PASS").unwrap(),
        Verdict::Fail => writeln!(out, "{head}: FAIL").unwrap(),
        Verdict::Refused => {
            let cap = r.refusal.as_ref().expect("refused reports carry a refusal");
            writeln!(
                out,
                "{head}: REFUSED: cap {} requires {} (limit {})",
                cap.cap, cap.required, cap.limit
            )
            .unwrap();
        }
    }
    if let Some(w) = &r.witness {
        writeln!(out, "  witness: {}", compact(w)).unwrap();
    }
    if let Some(cx) = &r.counterexample {
        let bindings: Vec<String> = cx.bindings.iter().map(|(k, v)| format!("{k}={}", compact(v))).collect();
        writeln!(
            out,
            "  counterexample in ({}): {}",
            cx.algebras.join(", "),
            bindings.join(", ")
        )
        .unwrap();
    }
    for note in &r.notes {
        writeln!(out, "  note: {note}").unwrap();
    }
}

/// 0 when everything passes, 1 when anything fails, otherwise 2 for
/// refusals. A failure outranks a refusal: it is a definite answer.
pub fn exit_status(reports: &[CheckReport]) -> u8 {
    if reports.iter().any(CheckReport::failed) {
        1
    } else if reports.iter().any(CheckReport::refused) {
        2
    } else {
        0
    }
}
